#include "dycklab/net.hpp"

#include <cmath>

#include "dycklab/rng.hpp"

namespace dycklab {

std::string architecture_name(Architecture arch) {
  switch (arch) {
    case Architecture::rnn: return "rnn";
    case Architecture::gru: return "gru";
    case Architecture::lstm: return "lstm";
  }
  throw std::invalid_argument("unknown architecture");
}

Architecture architecture_from_name(const std::string& name) {
  if (name == "rnn") return Architecture::rnn;
  if (name == "gru") return Architecture::gru;
  if (name == "lstm") return Architecture::lstm;
  throw DataError("unknown architecture name: " + name);
}

int gate_count(Architecture arch) {
  switch (arch) {
    case Architecture::rnn: return 1;
    case Architecture::gru: return 3;
    case Architecture::lstm: return 4;
  }
  throw std::invalid_argument("unknown architecture");
}

const std::vector<std::string>& gate_names(Architecture arch) {
  static const std::vector<std::string> rnn = {"cell"};
  static const std::vector<std::string> gru = {"reset", "update", "candidate"};
  static const std::vector<std::string> lstm = {"input", "forget", "cell", "output"};
  switch (arch) {
    case Architecture::rnn: return rnn;
    case Architecture::gru: return gru;
    case Architecture::lstm: return lstm;
  }
  throw std::invalid_argument("unknown architecture");
}

std::vector<std::vector<double>*> TensorBundle::tensors() {
  std::vector<std::vector<double>*> out;
  for (auto& block : blocks) {
    out.push_back(&block.w_ih.a);
    out.push_back(&block.b_ih);
    out.push_back(&block.w_hh.a);
    out.push_back(&block.b_hh);
  }
  out.push_back(&readout.a);
  out.push_back(&readout_bias);
  return out;
}

std::vector<const std::vector<double>*> TensorBundle::tensors() const {
  std::vector<const std::vector<double>*> out;
  for (const auto& block : blocks) {
    out.push_back(&block.w_ih.a);
    out.push_back(&block.b_ih);
    out.push_back(&block.w_hh.a);
    out.push_back(&block.b_hh);
  }
  out.push_back(&readout.a);
  out.push_back(&readout_bias);
  return out;
}

size_t TensorBundle::parameter_count() const {
  size_t n = 0;
  for (const auto* t : tensors()) n += t->size();
  return n;
}

TensorBundle zeros_like(const TensorBundle& shape) {
  TensorBundle out;
  out.blocks.reserve(shape.blocks.size());
  for (const auto& block : shape.blocks) {
    GateBlock zero;
    zero.w_ih = Mat(block.w_ih.rows, block.w_ih.cols);
    zero.b_ih.assign(block.b_ih.size(), 0.0);
    zero.w_hh = Mat(block.w_hh.rows, block.w_hh.cols);
    zero.b_hh.assign(block.b_hh.size(), 0.0);
    out.blocks.push_back(std::move(zero));
  }
  out.readout = Mat(shape.readout.rows, shape.readout.cols);
  out.readout_bias.assign(shape.readout_bias.size(), 0.0);
  return out;
}

NetParams init_params(Architecture arch, int input_dim, int hidden, uint64_t seed) {
  if (input_dim < 1 || hidden < 1)
    throw std::invalid_argument("input_dim and hidden must be >= 1");
  NetParams params;
  params.arch = arch;
  params.input_dim = input_dim;
  params.hidden = hidden;

  Rng rng(seed);
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  auto fill = [&](Mat& m) {
    for (double& v : m.a) v = rng.next_uniform(-bound, bound);
  };

  for (int g = 0; g < gate_count(arch); ++g) {
    GateBlock block;
    block.w_ih = Mat(hidden, input_dim);
    block.b_ih.assign(hidden, 0.0);
    block.w_hh = Mat(hidden, hidden);
    block.b_hh.assign(hidden, 0.0);
    fill(block.w_ih);
    fill(block.w_hh);
    params.t.blocks.push_back(std::move(block));
  }
  params.t.readout = Mat(input_dim, hidden);
  fill(params.t.readout);
  params.t.readout_bias.assign(input_dim, 0.0);
  return params;
}

NetState zero_state(const NetParams& params) {
  NetState state;
  state.h.assign(params.hidden, 0.0);
  if (params.arch == Architecture::lstm) state.c.assign(params.hidden, 0.0);
  return state;
}

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void matvec_add(const Mat& w, const Vec& x, Vec& out) {
  for (int r = 0; r < w.rows; ++r) {
    double acc = out[r];
    const double* row = w.a.data() + static_cast<size_t>(r) * w.cols;
    for (int c = 0; c < w.cols; ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
}

void matvec_transposed_add(const Mat& w, const Vec& d, Vec& out) {
  for (int r = 0; r < w.rows; ++r) {
    const double* row = w.a.data() + static_cast<size_t>(r) * w.cols;
    for (int c = 0; c < w.cols; ++c) out[c] += row[c] * d[r];
  }
}

void outer_add(Mat& w, const Vec& d, const Vec& x) {
  for (int r = 0; r < w.rows; ++r) {
    double* row = w.a.data() + static_cast<size_t>(r) * w.cols;
    for (int c = 0; c < w.cols; ++c) row[c] += d[r] * x[c];
  }
}

void add(Vec& out, const Vec& d) {
  for (size_t i = 0; i < out.size(); ++i) out[i] += d[i];
}

// preactivation of one gate block: W_ih x + b_ih + W_hh h + b_hh
Vec block_preactivation(const GateBlock& block, const Vec& x, const Vec& h_prev) {
  Vec z = block.b_ih;
  add(z, block.b_hh);
  matvec_add(block.w_ih, x, z);
  matvec_add(block.w_hh, h_prev, z);
  return z;
}

// Everything backward needs from one timestep.
struct StepCache {
  Vec h_prev, c_prev;
  std::vector<Vec> gates;  // post-activation, in gate order
  Vec candidate_recurrent; // GRU: W_hn h_prev + b_hn before reset gating
  Vec c, tanh_c;           // LSTM
  Vec h;
  Vec y;
};

void require_finite(const Vec& v, const char* what, size_t t) {
  for (double x : v)
    if (!std::isfinite(x))
      throw NumericalError(std::string("non-finite ") + what + " at timestep " +
                           std::to_string(t));
}

void require_finite_params(const NetParams& params) {
  for (const auto* tensor : params.t.tensors())
    for (double x : *tensor)
      if (!std::isfinite(x)) throw NumericalError("non-finite parameter");
}

StepCache step_cached(const NetParams& params, const Vec& x, const Vec& h_prev,
                      const Vec& c_prev, size_t t) {
  const int H = params.hidden;
  StepCache cache;
  cache.h_prev = h_prev;
  cache.c_prev = c_prev;

  switch (params.arch) {
    case Architecture::rnn: {
      Vec z = block_preactivation(params.t.blocks[0], x, h_prev);
      cache.h.resize(H);
      for (int i = 0; i < H; ++i) cache.h[i] = std::tanh(z[i]);
      cache.gates.push_back(cache.h);
      break;
    }
    case Architecture::lstm: {
      // gate order: input, forget, cell candidate, output
      Vec a_i = block_preactivation(params.t.blocks[0], x, h_prev);
      Vec a_f = block_preactivation(params.t.blocks[1], x, h_prev);
      Vec a_g = block_preactivation(params.t.blocks[2], x, h_prev);
      Vec a_o = block_preactivation(params.t.blocks[3], x, h_prev);
      Vec gi(H), gf(H), gg(H), go(H);
      cache.c.resize(H);
      cache.tanh_c.resize(H);
      cache.h.resize(H);
      for (int i = 0; i < H; ++i) {
        gi[i] = sigmoid(a_i[i]);
        gf[i] = sigmoid(a_f[i]);
        gg[i] = std::tanh(a_g[i]);
        go[i] = sigmoid(a_o[i]);
        cache.c[i] = gf[i] * c_prev[i] + gi[i] * gg[i];
        cache.tanh_c[i] = std::tanh(cache.c[i]);
        cache.h[i] = go[i] * cache.tanh_c[i];
      }
      cache.gates = {std::move(gi), std::move(gf), std::move(gg), std::move(go)};
      break;
    }
    case Architecture::gru: {
      // gate order: reset, update, candidate
      Vec a_r = block_preactivation(params.t.blocks[0], x, h_prev);
      Vec a_z = block_preactivation(params.t.blocks[1], x, h_prev);
      const auto& cand = params.t.blocks[2];
      Vec s = cand.b_hh;  // recurrent part, gated by reset below
      matvec_add(cand.w_hh, h_prev, s);
      Vec a_n = cand.b_ih;
      matvec_add(cand.w_ih, x, a_n);
      Vec gr(H), gz(H), gn(H);
      cache.h.resize(H);
      for (int i = 0; i < H; ++i) {
        gr[i] = sigmoid(a_r[i]);
        gz[i] = sigmoid(a_z[i]);
        gn[i] = std::tanh(a_n[i] + gr[i] * s[i]);
        cache.h[i] = (1.0 - gz[i]) * h_prev[i] + gz[i] * gn[i];
      }
      cache.candidate_recurrent = std::move(s);
      cache.gates = {std::move(gr), std::move(gz), std::move(gn)};
      break;
    }
  }

  cache.y = params.t.readout_bias;
  matvec_add(params.t.readout, cache.h, cache.y);
  for (double& v : cache.y) v = sigmoid(v);
  require_finite(cache.h, "hidden state", t);
  if (!cache.c.empty()) require_finite(cache.c, "cell state", t);
  return cache;
}

std::vector<StepCache> run_forward(const NetParams& params, const std::vector<Vec>& inputs) {
  require_finite_params(params);
  std::vector<StepCache> caches;
  caches.reserve(inputs.size());
  Vec h(params.hidden, 0.0);
  Vec c(params.arch == Architecture::lstm ? params.hidden : 0, 0.0);
  for (size_t t = 0; t < inputs.size(); ++t) {
    if (static_cast<int>(inputs[t].size()) != params.input_dim)
      throw DataError("input dimension mismatch at timestep " + std::to_string(t));
    caches.push_back(step_cached(params, inputs[t], h, c, t));
    h = caches.back().h;
    if (params.arch == Architecture::lstm) c = caches.back().c;
  }
  return caches;
}

}  // namespace

std::pair<NetState, Vec> step(const NetParams& params, const Vec& x, const NetState& state) {
  require_finite_params(params);
  if (static_cast<int>(state.h.size()) != params.hidden ||
      static_cast<int>(x.size()) != params.input_dim)
    throw DataError("step: state or input dimension mismatch");
  StepCache cache = step_cached(params, x, state.h, state.c, 0);
  NetState next;
  next.h = cache.h;
  next.c = cache.c;
  return {std::move(next), std::move(cache.y)};
}

ForwardResult forward(const NetParams& params, const std::vector<Vec>& inputs) {
  auto caches = run_forward(params, inputs);
  ForwardResult result;
  result.outputs.reserve(caches.size());
  result.trace.hidden.reserve(caches.size());
  for (auto& cache : caches) {
    result.outputs.push_back(cache.y);
    result.trace.hidden.push_back(cache.h);
    if (params.arch == Architecture::lstm) result.trace.cell.push_back(cache.c);
    result.trace.output.push_back(cache.y);
  }
  return result;
}

double mse_loss(const std::vector<Vec>& outputs, const std::vector<Vec>& targets) {
  if (outputs.size() != targets.size())
    throw DataError("mse_loss: output/target length mismatch");
  double acc = 0.0;
  size_t n = 0;
  for (size_t t = 0; t < outputs.size(); ++t) {
    if (outputs[t].size() != targets[t].size())
      throw DataError("mse_loss: dimension mismatch at timestep " + std::to_string(t));
    for (size_t d = 0; d < outputs[t].size(); ++d) {
      double e = outputs[t][d] - targets[t][d];
      acc += e * e;
      ++n;
    }
  }
  return n == 0 ? 0.0 : acc / static_cast<double>(n);
}

BackwardResult backward(const NetParams& params, const std::vector<Vec>& inputs,
                        const std::vector<Vec>& targets) {
  return backward_masked(params, inputs, targets, std::vector<double>(inputs.size(), 1.0));
}

BackwardResult backward_masked(const NetParams& params, const std::vector<Vec>& inputs,
                               const std::vector<Vec>& targets,
                               const std::vector<double>& step_weights) {
  if (inputs.size() != targets.size() || inputs.size() != step_weights.size())
    throw DataError("backward: input/target/weight length mismatch");
  const int H = params.hidden;
  const int D = params.input_dim;
  const size_t T = inputs.size();

  BackwardResult result;
  result.grads = zeros_like(params.t);
  if (T == 0) return result;

  auto caches = run_forward(params, inputs);

  double weight_total = 0.0;
  for (double w : step_weights) weight_total += w;
  if (weight_total == 0.0) return result;
  const double norm = 1.0 / (weight_total * D);

  // loss = sum_t w_t |y_t - target_t|^2 / (D * sum_t w_t)
  for (size_t t = 0; t < T; ++t) {
    if (step_weights[t] == 0.0) continue;
    for (int d = 0; d < D; ++d) {
      double e = caches[t].y[d] - targets[t][d];
      result.loss += step_weights[t] * e * e * norm;
    }
  }

  Vec dh(H, 0.0);
  Vec dc(H, 0.0);
  Vec dh_prev(H), dc_prev(H);
  Vec d_readout_pre(D);

  for (size_t t = T; t-- > 0;) {
    const StepCache& cache = caches[t];

    // readout: y = sigmoid(W_y h)
    if (step_weights[t] != 0.0) {
      for (int d = 0; d < D; ++d) {
        double dy = 2.0 * norm * step_weights[t] * (cache.y[d] - targets[t][d]);
        d_readout_pre[d] = dy * cache.y[d] * (1.0 - cache.y[d]);
      }
      outer_add(result.grads.readout, d_readout_pre, cache.h);
      add(result.grads.readout_bias, d_readout_pre);
      matvec_transposed_add(params.t.readout, d_readout_pre, dh);
    }

    std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
    std::fill(dc_prev.begin(), dc_prev.end(), 0.0);

    switch (params.arch) {
      case Architecture::rnn: {
        Vec dz(H);
        for (int i = 0; i < H; ++i) dz[i] = dh[i] * (1.0 - cache.h[i] * cache.h[i]);
        auto& g = result.grads.blocks[0];
        outer_add(g.w_ih, dz, inputs[t]);
        add(g.b_ih, dz);
        outer_add(g.w_hh, dz, cache.h_prev);
        add(g.b_hh, dz);
        matvec_transposed_add(params.t.blocks[0].w_hh, dz, dh_prev);
        break;
      }
      case Architecture::lstm: {
        const Vec& gi = cache.gates[0];
        const Vec& gf = cache.gates[1];
        const Vec& gg = cache.gates[2];
        const Vec& go = cache.gates[3];
        Vec da_i(H), da_f(H), da_g(H), da_o(H);
        for (int i = 0; i < H; ++i) {
          double dci = dc[i] + dh[i] * go[i] * (1.0 - cache.tanh_c[i] * cache.tanh_c[i]);
          double doi = dh[i] * cache.tanh_c[i];
          da_o[i] = doi * go[i] * (1.0 - go[i]);
          da_i[i] = dci * gg[i] * gi[i] * (1.0 - gi[i]);
          da_f[i] = dci * cache.c_prev[i] * gf[i] * (1.0 - gf[i]);
          da_g[i] = dci * gi[i] * (1.0 - gg[i] * gg[i]);
          dc_prev[i] = dci * gf[i];
        }
        const Vec* das[4] = {&da_i, &da_f, &da_g, &da_o};
        for (int g = 0; g < 4; ++g) {
          auto& grads = result.grads.blocks[g];
          outer_add(grads.w_ih, *das[g], inputs[t]);
          add(grads.b_ih, *das[g]);
          outer_add(grads.w_hh, *das[g], cache.h_prev);
          add(grads.b_hh, *das[g]);
          matvec_transposed_add(params.t.blocks[g].w_hh, *das[g], dh_prev);
        }
        break;
      }
      case Architecture::gru: {
        const Vec& gr = cache.gates[0];
        const Vec& gz = cache.gates[1];
        const Vec& gn = cache.gates[2];
        Vec da_r(H), da_z(H), da_n(H), ds(H);
        for (int i = 0; i < H; ++i) {
          double dn = dh[i] * gz[i];
          da_n[i] = dn * (1.0 - gn[i] * gn[i]);
          double dz_gate = dh[i] * (gn[i] - cache.h_prev[i]);
          da_z[i] = dz_gate * gz[i] * (1.0 - gz[i]);
          dh_prev[i] += dh[i] * (1.0 - gz[i]);
          double dr = da_n[i] * cache.candidate_recurrent[i];
          da_r[i] = dr * gr[i] * (1.0 - gr[i]);
          ds[i] = da_n[i] * gr[i];
        }
        auto& r_block = result.grads.blocks[0];
        outer_add(r_block.w_ih, da_r, inputs[t]);
        add(r_block.b_ih, da_r);
        outer_add(r_block.w_hh, da_r, cache.h_prev);
        add(r_block.b_hh, da_r);
        matvec_transposed_add(params.t.blocks[0].w_hh, da_r, dh_prev);

        auto& z_block = result.grads.blocks[1];
        outer_add(z_block.w_ih, da_z, inputs[t]);
        add(z_block.b_ih, da_z);
        outer_add(z_block.w_hh, da_z, cache.h_prev);
        add(z_block.b_hh, da_z);
        matvec_transposed_add(params.t.blocks[1].w_hh, da_z, dh_prev);

        auto& n_block = result.grads.blocks[2];
        outer_add(n_block.w_ih, da_n, inputs[t]);
        add(n_block.b_ih, da_n);
        outer_add(n_block.w_hh, ds, cache.h_prev);
        add(n_block.b_hh, ds);
        matvec_transposed_add(params.t.blocks[2].w_hh, ds, dh_prev);
        break;
      }
    }

    for (int i = 0; i < H; ++i) {
      if (!std::isfinite(dh_prev[i]))
        throw NumericalError("non-finite gradient at timestep " + std::to_string(t));
    }
    dh = dh_prev;
    dc = dc_prev;
  }
  return result;
}

AdamState make_adam_state(const NetParams& params) {
  AdamState state;
  state.m = zeros_like(params.t);
  state.v = zeros_like(params.t);
  return state;
}

void adam_update(NetParams& params, const Gradients& grads, AdamState& state,
                 const AdamConfig& config) {
  ++state.step;
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));

  auto theta = params.t.tensors();
  auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  for (size_t k = 0; k < theta.size(); ++k) {
    auto& tk = *theta[k];
    const auto& gk = *g[k];
    auto& mk = *m[k];
    auto& vk = *v[k];
    if (tk.size() != gk.size()) throw DataError("adam_update: shape mismatch");
    for (size_t i = 0; i < tk.size(); ++i) {
      mk[i] = config.beta1 * mk[i] + (1.0 - config.beta1) * gk[i];
      vk[i] = config.beta2 * vk[i] + (1.0 - config.beta2) * gk[i] * gk[i];
      double m_hat = mk[i] / bc1;
      double v_hat = vk[i] / bc2;
      tk[i] -= config.alpha * m_hat / (std::sqrt(v_hat) + config.eps);
    }
  }
}

GradCheckReport gradient_check(Architecture arch, int input_dim, int hidden,
                               int trials, uint64_t seed) {
  GradCheckReport report;
  const double eps = 1e-5;

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_stream(seed, static_cast<uint64_t>(trial)));
    NetParams params = init_params(arch, input_dim, hidden, rng.next_u64());

    const size_t T = 1 + rng.next_below(8);
    std::vector<Vec> inputs, targets;
    for (size_t t = 0; t < T; ++t) {
      Vec x(input_dim, 0.0);
      x[rng.next_below(static_cast<uint64_t>(input_dim))] = 1.0;
      inputs.push_back(std::move(x));
      Vec y(input_dim, 0.0);
      for (int d = 0; d < input_dim; ++d) y[d] = rng.next_below(2) ? 1.0 : 0.0;
      targets.push_back(std::move(y));
    }

    BackwardResult analytic = backward(params, inputs, targets);
    auto analytic_tensors = analytic.grads.tensors();
    auto param_tensors = params.t.tensors();

    for (size_t k = 0; k < param_tensors.size(); ++k) {
      auto& tensor = *param_tensors[k];
      for (size_t i = 0; i < tensor.size(); ++i) {
        const double saved = tensor[i];
        tensor[i] = saved + eps;
        double up = mse_loss(forward(params, inputs).outputs, targets);
        tensor[i] = saved - eps;
        double down = mse_loss(forward(params, inputs).outputs, targets);
        tensor[i] = saved;
        double numeric = (up - down) / (2.0 * eps);
        double a = (*analytic_tensors[k])[i];
        double denom = std::max({std::abs(a), std::abs(numeric), 1e-6});
        report.max_rel_error = std::max(report.max_rel_error,
                                        std::abs(a - numeric) / denom);
      }
    }
  }
  report.passed = report.max_rel_error < report.tolerance;
  return report;
}

}  // namespace dycklab
