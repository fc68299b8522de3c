/*
 * Copyright 2026 The costbound Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "costbound/learners/logit.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace costbound {

SoftmaxModel SoftmaxModel::zeros(std::size_t n_classes, std::size_t n_features) {
  SoftmaxModel m;
  m.n_classes = n_classes;
  m.n_features = n_features;
  m.weights.assign(n_classes * n_features, 0.0);
  m.intercepts.assign(n_classes, 0.0);
  return m;
}

namespace {

// Fills `p` with softmax probabilities for one row; returns log-sum-exp.
double softmax_row(const SoftmaxModel& m, std::span<const double> x, std::vector<double>& p) {
  p.resize(m.n_classes);
  for (std::size_t c = 0; c < m.n_classes; ++c) {
    double z = m.intercepts[c];
    const double* w = m.weights.data() + c * m.n_features;
    for (std::size_t j = 0; j < m.n_features; ++j) z += w[j] * x[j];
    p[c] = z;
  }
  const double mx = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return mx + std::log(sum);
}

}  // namespace

std::vector<double> SoftmaxModel::probabilities(std::span<const double> x) const {
  std::vector<double> p;
  softmax_row(*this, x, p);
  return p;
}

int SoftmaxModel::predict(std::span<const double> x) const {
  const auto p = probabilities(x);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

double SoftmaxModel::l1_norm() const {
  double s = 0.0;
  for (double w : weights) s += std::abs(w);
  return s;
}

std::vector<std::size_t> SoftmaxModel::active_features() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n_features; ++j) {
    for (std::size_t c = 0; c < n_classes; ++c) {
      if (weight(c, j) != 0.0) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

double softmax_loss(const SoftmaxModel& m, const Matrix& x, std::span<const int> y,
                    std::vector<double>* gradient) {
  const std::size_t k = m.n_classes;
  const std::size_t d = m.n_features;
  if (gradient) gradient->assign(k * d + k, 0.0);
  std::vector<double> p;
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    const double lse = softmax_row(m, row, p);
    const auto yi = static_cast<std::size_t>(y[i]);
    double z = m.intercepts[yi];
    for (std::size_t j = 0; j < d; ++j) z += m.weight(yi, j) * row[j];
    loss += lse - z;
    if (gradient) {
      auto& g = *gradient;
      for (std::size_t c = 0; c < k; ++c) {
        const double r = p[c] - (c == yi ? 1.0 : 0.0);
        double* gw = g.data() + c * d;
        for (std::size_t j = 0; j < d; ++j) gw[j] += r * row[j];
        g[k * d + c] += r;
      }
    }
  }
  return loss;
}

namespace {

double penalty(const SoftmaxModel& m, double lambda, double alpha) {
  if (lambda == 0.0) return 0.0;
  double l1 = 0.0, l2 = 0.0;
  for (double w : m.weights) {
    l1 += std::abs(w);
    l2 += w * w;
  }
  return lambda * (alpha * l1 + (1.0 - alpha) / 2.0 * l2);
}

void proximal_step(const SoftmaxModel& from, const std::vector<double>& grad, double step,
                   double lambda, double alpha, SoftmaxModel& to) {
  const std::size_t nw = from.weights.size();
  const double shrink = step * lambda * alpha;
  const double scale = 1.0 + step * lambda * (1.0 - alpha);
  for (std::size_t i = 0; i < nw; ++i) {
    const double v = from.weights[i] - step * grad[i];
    const double soft = std::copysign(std::max(std::abs(v) - shrink, 0.0), v);
    to.weights[i] = soft / scale;
  }
  for (std::size_t c = 0; c < from.n_classes; ++c) {
    to.intercepts[c] = from.intercepts[c] - step * grad[nw + c];
  }
}

double dot_diff(const SoftmaxModel& a, const SoftmaxModel& b, const std::vector<double>& g,
                double* sq) {
  double dot = 0.0, s = 0.0;
  const std::size_t nw = a.weights.size();
  for (std::size_t i = 0; i < nw; ++i) {
    const double d = a.weights[i] - b.weights[i];
    dot += g[i] * d;
    s += d * d;
  }
  for (std::size_t c = 0; c < a.n_classes; ++c) {
    const double d = a.intercepts[c] - b.intercepts[c];
    dot += g[nw + c] * d;
    s += d * d;
  }
  *sq = s;
  return dot;
}

}  // namespace

SoftmaxModel fit_softmax(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                         double lambda, double alpha, const SolverOptions& options,
                         const SoftmaxModel* warm_start) {
  if (y.size() != x.rows()) throw std::invalid_argument("softmax: label count mismatch");
  if (lambda < 0.0 || alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("softmax: invalid penalty");
  }
  SoftmaxModel current = warm_start ? *warm_start : SoftmaxModel::zeros(n_classes, x.cols());
  if (current.n_classes != n_classes || current.n_features != x.cols()) {
    throw std::invalid_argument("softmax: warm start has the wrong shape");
  }
  if (!warm_start) {
    // Intercepts at the log class frequencies: the optimum without features.
    std::vector<double> freq(n_classes, 0.0);
    for (int c : y) freq[static_cast<std::size_t>(c)] += 1.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
      current.intercepts[c] = std::log(std::max(freq[c], 0.5) / static_cast<double>(y.size()));
    }
  }

  // Conservative initial step from a Lipschitz bound of the summed loss.
  double frob = static_cast<double>(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (double v : x.row(i)) frob += v * v;
  }
  double step = 1.0 / std::max(0.5 * frob, 1e-12);

  auto objective = [&](const SoftmaxModel& m) {
    return softmax_loss(m, x, y) + penalty(m, lambda, alpha);
  };

  SoftmaxModel momentum = current;
  SoftmaxModel candidate = current;
  SoftmaxModel previous = current;
  std::vector<double> grad;
  double t_k = 1.0;
  double f_current = objective(current);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const double smooth_at_momentum = softmax_loss(momentum, x, y, &grad);
    step *= 1.25;
    double smooth_candidate = 0.0;
    for (int tries = 0; tries < 60; ++tries) {
      proximal_step(momentum, grad, step, lambda, alpha, candidate);
      smooth_candidate = softmax_loss(candidate, x, y);
      double sq = 0.0;
      const double lin = dot_diff(candidate, momentum, grad, &sq);
      if (smooth_candidate <= smooth_at_momentum + lin + sq / (2.0 * step) + 1e-12 * std::abs(smooth_at_momentum)) {
        break;
      }
      step *= 0.5;
    }
    const double f_candidate = smooth_candidate + penalty(candidate, lambda, alpha);

    previous = current;
    if (f_candidate > f_current) {
      // Restart the momentum; keep the better iterate.
      momentum = current;
      t_k = 1.0;
      continue;
    }
    current = candidate;
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k)) / 2.0;
    const double beta = (t_k - 1.0) / t_next;
    t_k = t_next;
    for (std::size_t i = 0; i < current.weights.size(); ++i) {
      momentum.weights[i] = current.weights[i] + beta * (current.weights[i] - previous.weights[i]);
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
      momentum.intercepts[c] = current.intercepts[c] + beta * (current.intercepts[c] - previous.intercepts[c]);
    }
    const double change = std::abs(f_current - f_candidate);
    f_current = f_candidate;
    if (change <= options.tolerance * std::max(1.0, std::abs(f_current))) break;
  }
  return current;
}

GoodnessOfFit mcfadden_adjusted_r2(const Matrix& probabilities, std::span<const int> y,
                                   std::size_t k) {
  if (probabilities.rows() != y.size()) {
    throw std::invalid_argument("mcfadden: row count mismatch");
  }
  const std::size_t classes = probabilities.cols();
  std::vector<double> freq(classes, 0.0);
  for (int c : y) freq[static_cast<std::size_t>(c)] += 1.0;
  const double n = static_cast<double>(y.size());
  GoodnessOfFit fit;
  fit.k = k;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto c = static_cast<std::size_t>(y[i]);
    fit.log_likelihood += std::log(std::clamp(probabilities(i, c), 1e-12, 1.0));
    fit.null_log_likelihood += std::log(std::clamp(freq[c] / n, 1e-12, 1.0));
  }
  fit.r2_adjusted = 1.0 - (fit.log_likelihood - static_cast<double>(k)) / fit.null_log_likelihood;
  return fit;
}

namespace {

Matrix predict_matrix(const SoftmaxModel& m, const Matrix& x) {
  Matrix p(x.rows(), m.n_classes);
  std::vector<double> row;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    softmax_row(m, x.row(i), row);
    std::copy(row.begin(), row.end(), p.row(i).begin());
  }
  return p;
}

}  // namespace

std::vector<double> LogitModel::probabilities(std::span<const double> x) const {
  std::vector<double> sub(selected.size());
  for (std::size_t j = 0; j < selected.size(); ++j) sub[j] = x[selected[j]];
  return refit.probabilities(sub);
}

int LogitModel::predict(std::span<const double> x) const {
  const auto p = probabilities(x);
  return classes[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())];
}

nlohmann::json LogitModel::to_json(const std::vector<std::string>& feature_names) const {
  auto name = [&](std::size_t j) {
    return j < feature_names.size() ? feature_names[j] : "x" + std::to_string(j);
  };
  nlohmann::json coefficients = nlohmann::json::object();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    nlohmann::json row = {{"intercept", refit.intercepts[c]}};
    for (std::size_t j = 0; j < selected.size(); ++j) row[name(selected[j])] = refit.weight(c, j);
    coefficients[std::to_string(classes[c])] = std::move(row);
  }
  nlohmann::json grid_json = nlohmann::json::array();
  for (const auto& g : grid) {
    grid_json.push_back({{"lambda", g.lambda},
                         {"alpha", g.alpha},
                         {"r2_adjusted", g.r2_adjusted},
                         {"active_features", g.active_features},
                         {"l1_norm", g.l1_norm}});
  }
  nlohmann::json selected_names = nlohmann::json::array();
  for (std::size_t j : selected) selected_names.push_back(name(j));
  return {{"format_version", 1},
          {"classes", classes},
          {"lambda", lambda},
          {"alpha", alpha},
          {"selected", std::move(selected_names)},
          {"stage1_r2_adjusted", penalized_fit.r2_adjusted},
          {"stage2_r2_adjusted", refit_fit.r2_adjusted},
          {"coefficients", std::move(coefficients)},
          {"grid", std::move(grid_json)}};
}

LogitModel fit_multinomial_logit_elastic_net(const Matrix& x, std::span<const int> y,
                                             const LogitOptions& options) {
  if (x.rows() != y.size()) throw std::invalid_argument("logit: label count mismatch");
  if (options.lambdas.empty() || options.alphas.empty()) {
    throw std::invalid_argument("logit: empty regularization grid");
  }
  LogitModel model;
  std::map<int, int> index;
  for (int label : y) index.emplace(label, 0);
  if (index.size() < 2) {
    throw std::invalid_argument("logit: at least two classes are required");
  }
  for (auto& [label, idx] : index) {
    idx = static_cast<int>(model.classes.size());
    model.classes.push_back(label);
  }
  std::vector<int> cls(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) cls[i] = index.at(y[i]);
  const std::size_t k = model.classes.size();
  const std::size_t d = x.cols();

  model.means.assign(d, 0.0);
  model.scales.assign(d, 1.0);
  const double n = static_cast<double>(x.rows());
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
    const double sd = std::sqrt(var / n);
    model.means[j] = mean;
    model.scales[j] = sd > 0.0 ? sd : 1.0;
  }
  Matrix z(x.rows(), d);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) z(i, j) = (x(i, j) - model.means[j]) / model.scales[j];
  }

  // Stage 1: walk each alpha from the strongest penalty down, warm-starting.
  std::vector<double> lambdas = options.lambdas;
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  bool have_best = false;
  for (double alpha : options.alphas) {
    SoftmaxModel warm;
    bool has_warm = false;
    for (double lambda : lambdas) {
      SoftmaxModel m = fit_softmax(z, cls, k, lambda, alpha, options.solver,
                                   has_warm ? &warm : nullptr);
      const auto active = m.active_features();
      const GoodnessOfFit fit = mcfadden_adjusted_r2(predict_matrix(m, z), cls, active.size());
      model.grid.push_back({lambda, alpha, fit.r2_adjusted, active.size(), m.l1_norm()});
      if (!have_best || fit.r2_adjusted > model.penalized_fit.r2_adjusted) {
        have_best = true;
        model.lambda = lambda;
        model.alpha = alpha;
        model.penalized = m;
        model.penalized_fit = fit;
      }
      warm = std::move(m);
      has_warm = true;
    }
  }

  // Stage 2: unpenalized refit on the surviving features. The optimum is
  // invariant to affine rescaling, so fit on z-scores and map back.
  model.selected = model.penalized.active_features();
  const Matrix z_sel = z.select_columns(model.selected);
  const SoftmaxModel std_fit = fit_softmax(z_sel, cls, k, 0.0, 1.0, options.solver);
  SoftmaxModel raw = SoftmaxModel::zeros(k, model.selected.size());
  for (std::size_t c = 0; c < k; ++c) {
    double b = std_fit.intercepts[c];
    for (std::size_t j = 0; j < model.selected.size(); ++j) {
      const std::size_t f = model.selected[j];
      const double w = std_fit.weight(c, j) / model.scales[f];
      raw.weights[c * model.selected.size() + j] = w;
      b -= w * model.means[f];
    }
    raw.intercepts[c] = b;
  }
  model.refit = std::move(raw);
  model.refit_fit = mcfadden_adjusted_r2(predict_matrix(std_fit, z_sel), cls, model.selected.size());
  return model;
}

}  // namespace costbound
