#pragma once

#include <utility>
#include <vector>

#include "unlearn/datasets.hpp"

namespace unlearn {

// The three ridge-regularized exponential-loss objectives over one dataset:
//   Pretrain_D:      (1/|D|) sum_D e^{-margin} + lambda/2 ||w||^2
//   Retrain_R:       (1/|R|) sum_R e^{-margin} + lambda/2 ||w||^2
//   SimultaneousDA:  (1/|R|) sum_R e^{-margin} - (1/|F|) sum_F e^{-margin}
//                    + lambda/2 ||w||^2
// With block data every sample of block j has margin w_j. An empty forget
// set makes the forget-average term 0.
enum class ObjectiveKind { Pretrain_D, Retrain_R, SimultaneousDA };

double loss_exp(const std::vector<double>& w, const BlockDataset& data,
                ObjectiveKind kind, double lambda);
std::vector<double> grad_exp(const std::vector<double>& w, const BlockDataset& data,
                             ObjectiveKind kind, double lambda);

// sigma(z) = 1 / (1 + exp(-(1+z)/2))
double sigmoid_shifted(double z);

// Weighted sigmoidal MSE on explicit samples with features (x, x^2):
//   L(theta) = (1/n) sum_i mult_i * (sigma(<theta, x_i>) - t_i)^2
//              + lambda/2 ||theta||^2,   t_i = (label_i + 1) / 2,
// where n is the number of listed samples.
double loss_mse_sigmoid(std::pair<double, double> theta, const DenseDataset& data, double lambda);
std::pair<double, double> grad_mse_sigmoid(std::pair<double, double> theta,
                                           const DenseDataset& data, double lambda);

// Reweighted copy expressing each objective over the same listed samples:
// Pretrain_D keeps multiplicities, Retrain_R removes the forget units,
// SimultaneousDA subtracts them twice (retain units minus forget units).
DenseDataset apply_objective_weights(const DenseDataset& data, ObjectiveKind kind);

} // namespace unlearn
