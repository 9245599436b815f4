#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dycklab/language.hpp"

namespace dycklab {

enum class Architecture { rnn, gru, lstm };

std::string architecture_name(Architecture arch);
Architecture architecture_from_name(const std::string& name);  // throws DataError
int gate_count(Architecture arch);                             // 1 / 3 / 4
const std::vector<std::string>& gate_names(Architecture arch);

using Vec = std::vector<double>;

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// One recurrence block: h-sized preactivation from W_ih x + b_ih + W_hh h + b_hh.
// GRU and LSTM carry one block per gate.
struct GateBlock {
  Mat w_ih;  // H x D
  Vec b_ih;  // H
  Mat w_hh;  // H x H
  Vec b_hh;  // H
};

// Every learnable tensor of a network, in a fixed documented order: blocks in
// gate order (w_ih, b_ih, w_hh, b_hh each), then readout weights and bias.
struct TensorBundle {
  std::vector<GateBlock> blocks;
  Mat readout;       // D x H
  Vec readout_bias;  // D

  std::vector<std::vector<double>*> tensors();
  std::vector<const std::vector<double>*> tensors() const;
  size_t parameter_count() const;
};

TensorBundle zeros_like(const TensorBundle& shape);

struct NetParams {
  Architecture arch = Architecture::rnn;
  int input_dim = 0;  // D: one-hot size = output size
  int hidden = 0;     // H
  TensorBundle t;
};

using Gradients = TensorBundle;

struct NetState {
  Vec h;
  Vec c;  // LSTM only; empty otherwise
};

struct NetTrace {
  std::vector<Vec> hidden;
  std::vector<Vec> cell;  // empty unless LSTM
  std::vector<Vec> output;
};

// Weights uniform on (-1/sqrt(H), +1/sqrt(H)), biases zero; one mt19937_64
// stream per seed, consumed in tensor order.
NetParams init_params(Architecture arch, int input_dim, int hidden, uint64_t seed);

NetState zero_state(const NetParams& params);

// One timestep: consumes x_t, returns the new state and y_t = sigmoid(W_y h_t + b_y).
std::pair<NetState, Vec> step(const NetParams& params, const Vec& x, const NetState& state);

struct ForwardResult {
  std::vector<Vec> outputs;
  NetTrace trace;
};

ForwardResult forward(const NetParams& params, const std::vector<Vec>& inputs);

// Mean over all T x D entries of the squared output error.
double mse_loss(const std::vector<Vec>& outputs, const std::vector<Vec>& targets);

struct BackwardResult {
  double loss = 0.0;
  Gradients grads;
};

// Exact full-unroll gradients of the MSE loss. step_weights, when given,
// selects which timesteps are supervised (the mean runs over the selected
// steps only); backward() supervises every step.
BackwardResult backward(const NetParams& params, const std::vector<Vec>& inputs,
                        const std::vector<Vec>& targets);
BackwardResult backward_masked(const NetParams& params, const std::vector<Vec>& inputs,
                               const std::vector<Vec>& targets,
                               const std::vector<double>& step_weights);

struct AdamConfig {
  double alpha = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  TensorBundle m;
  TensorBundle v;
  long step = 0;
};

AdamState make_adam_state(const NetParams& params);
void adam_update(NetParams& params, const Gradients& grads, AdamState& state,
                 const AdamConfig& config = {});

struct GradCheckReport {
  double max_rel_error = 0.0;
  bool passed = false;
  double tolerance = 1e-4;
};

// Compares BPTT against central finite differences (eps = 1e-5) on random
// parameters and random one-hot sequences of length <= 8.
GradCheckReport gradient_check(Architecture arch, int input_dim, int hidden,
                               int trials, uint64_t seed);

}  // namespace dycklab
