#pragma once

#include <map>
#include <span>
#include <vector>

#include "diknn/embedding.hpp"

namespace diknn {

enum class OrderMethod { Joint, Ragwitz, Fixed };

const char* to_string(OrderMethod m);

struct OrderSelection {
  int m_hat = 0;
  std::map<int, double> losses;  // candidate m -> mean squared prediction loss
  OrderMethod method = OrderMethod::Joint;
};

// k-NN prediction of the response of `row`: the unweighted (or, optionally,
// inverse-distance weighted) mean of the responses of the k rows whose
// predictor tuples are nearest under l-infinity, excluding rows whose time
// windows overlap the query row's window.  include_x selects the (Y^-,X^-)
// predictor over the Ragwitz (Y^-)-only variant.
double knn_predict_next(const EmbeddedDataset& ds, std::size_t row, int k,
                        bool include_x = true, bool weighted = false);

// Relative margin within which two candidate losses count as tied; ties
// resolve toward the smaller (more parsimonious) order.
inline constexpr double kOrderLossTieMargin = 0.05;

// Markov-order selection by minimum empirical prediction loss over the
// candidate set.  All candidates are scored on the common admissible row
// range dictated by the largest candidate; the smallest order within
// kOrderLossTieMargin of the best loss wins.
OrderSelection estimate_order(const SeriesPair& pair,
                              std::span<const int> candidates, int k,
                              OrderMethod method, bool weighted = false);

}  // namespace diknn
