// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pcosrisk/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {

namespace {

std::vector<int> ThresholdAtHalf(const std::vector<double>& p) {
  std::vector<int> out;
  out.reserve(p.size());
  for (double v : p) out.push_back(v >= 0.5 ? 1 : 0);
  return out;
}

}  // namespace

PredictionSet::PredictionSet(std::vector<double> p, std::vector<int> y)
    : PredictionSet(p, std::move(y), ThresholdAtHalf(p)) {}

PredictionSet::PredictionSet(std::vector<double> p, std::vector<int> y,
                             std::vector<int> y_hat)
    : p_(std::move(p)), y_(std::move(y)), y_hat_(std::move(y_hat)) {
  if (p_.empty()) {
    throw Error(ErrorCode::kArgument, "prediction set is empty");
  }
  if (y_.size() != p_.size() || y_hat_.size() != p_.size()) {
    throw Error(ErrorCode::kArgument, "prediction vectors are not aligned");
  }
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0 && p_[i] <= 1.0)) {
      throw Error(ErrorCode::kArgument,
                  "probability " + std::to_string(i) + " outside [0, 1]");
    }
    if ((y_[i] != 0 && y_[i] != 1) || (y_hat_[i] != 0 && y_hat_[i] != 1)) {
      throw Error(ErrorCode::kArgument, "labels must be 0 or 1");
    }
  }
}

PredictionSet PredictionSet::Subset(
    std::span<const std::size_t> indices) const {
  std::vector<double> p;
  std::vector<int> y, y_hat;
  for (std::size_t i : indices) {
    p.push_back(p_.at(i));
    y.push_back(y_[i]);
    y_hat.push_back(y_hat_[i]);
  }
  return PredictionSet(std::move(p), std::move(y), std::move(y_hat));
}

double BrierScore(const PredictionSet& ps) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double d = ps.p()[i] - ps.y()[i];
    sum += d * d;
  }
  return sum / static_cast<double>(ps.size());
}

std::size_t BinIndex(double value, double lo, double hi, int bins) {
  const double t = (value - lo) / (hi - lo);
  if (t <= 0.0) return 0;
  const auto m = static_cast<std::size_t>(std::floor(t * bins));
  return std::min(m, static_cast<std::size_t>(bins - 1));
}

double ExpectedCalibrationError(const PredictionSet& ps, int bins,
                                EceMode mode) {
  if (bins < 1) throw Error(ErrorCode::kArgument, "bin count must be >= 1",
                            "bins");
  const auto m = static_cast<std::size_t>(bins);
  std::vector<double> conf_sum(m, 0.0), acc_sum(m, 0.0);
  std::vector<std::size_t> count(m, 0);
  const bool confidence = mode == EceMode::kConfidence;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double p = ps.p()[i];
    const double conf = confidence ? std::max(p, 1.0 - p) : p;
    const double acc = confidence ? (ps.y_hat()[i] == ps.y()[i] ? 1.0 : 0.0)
                                  : static_cast<double>(ps.y()[i]);
    const std::size_t b =
        confidence ? BinIndex(conf, 0.5, 1.0, bins) : BinIndex(conf, 0.0, 1.0, bins);
    conf_sum[b] += conf;
    acc_sum[b] += acc;
    ++count[b];
  }
  double ece = 0.0;
  const double n = static_cast<double>(ps.size());
  for (std::size_t b = 0; b < m; ++b) {
    if (count[b] == 0) continue;
    const double c = static_cast<double>(count[b]);
    ece += (c / n) * std::abs(acc_sum[b] / c - conf_sum[b] / c);
  }
  return ece;
}

BinnedReliability ReliabilityCurve(const PredictionSet& ps, int bins) {
  if (bins < 1) throw Error(ErrorCode::kArgument, "bin count must be >= 1",
                            "bins");
  BinnedReliability out;
  out.total = ps.size();
  out.bins.resize(static_cast<std::size_t>(bins));
  std::vector<double> p_sum(out.bins.size(), 0.0), pos(out.bins.size(), 0.0),
      correct(out.bins.size(), 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::size_t b = BinIndex(ps.p()[i], 0.0, 1.0, bins);
    ++out.bins[b].count;
    p_sum[b] += ps.p()[i];
    pos[b] += ps.y()[i];
    correct[b] += ps.y()[i] == ps.y_hat()[i];
  }
  for (std::size_t b = 0; b < out.bins.size(); ++b) {
    auto& bin = out.bins[b];
    bin.lower = static_cast<double>(b) / bins;
    bin.upper = static_cast<double>(b + 1) / bins;
    if (bin.count == 0) continue;
    const double c = static_cast<double>(bin.count);
    bin.mean_predicted = p_sum[b] / c;
    bin.observed_rate = pos[b] / c;
    bin.accuracy = correct[b] / c;
  }
  return out;
}

CalibrationFit CalibrationSlope(const PredictionSet& ps, double eps) {
  const std::size_t n = ps.size();
  std::vector<double> z(n);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::clamp(ps.p()[i], eps, 1.0 - eps);
    z[i] = std::log(p / (1.0 - p));
    positives += ps.y()[i];
  }
  if (positives == 0 || positives == n) {
    throw Error(ErrorCode::kFit, "calibration slope needs both outcomes");
  }
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  if (*lo == *hi) {
    throw Error(ErrorCode::kFit,
                "calibration slope needs spread in the predictions");
  }

  CalibrationFit fit;
  double a = 0.0, b = 1.0;
  auto nll = [&](double ia, double ib) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = ia + ib * z[i];
      const double sp = eta > 0 ? eta + std::log1p(std::exp(-eta))
                                : std::log1p(std::exp(eta));
      f += sp - ps.y()[i] * eta;
    }
    return f;
  };
  double f = nll(a, b);
  for (int it = 0; it < 200; ++it) {
    double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = a + b * z[i];
      const double mu = eta >= 0 ? 1.0 / (1.0 + std::exp(-eta))
                                 : std::exp(eta) / (1.0 + std::exp(eta));
      const double r = mu - ps.y()[i];
      const double w = mu * (1.0 - mu);
      g0 += r;
      g1 += r * z[i];
      h00 += w;
      h01 += w * z[i];
      h11 += w * z[i] * z[i];
    }
    auto done = [&] {
      fit.iterations = it;
      fit.intercept = a;
      fit.slope = b;
      return fit;
    };
    // Tolerance applies to the per-sample gradient.
    const double nd = static_cast<double>(n);
    if (std::hypot(g0 / nd, g1 / nd) <= 1e-8) return done();
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0)) break;
    const double da = -(h11 * g0 - h01 * g1) / det;
    const double db = -(-h01 * g0 + h00 * g1) / det;
    // Newton decrement below the rounding floor of the summed likelihood.
    const double decrement = -(g0 * da + g1 * db);
    if (decrement <= 1e-12 * std::max(1.0, f)) return done();
    double step = 1.0;
    for (; step > 1e-12; step *= 0.5) {
      const double nf = nll(a + step * da, b + step * db);
      if (nf <= f) {
        a += step * da;
        b += step * db;
        f = nf;
        break;
      }
    }
    if (step <= 1e-12) break;
  }
  throw Error(ErrorCode::kConvergence,
              "calibration slope fit did not converge");
}

double NetBenefit(std::size_t tp, std::size_t fp, std::size_t n,
                  double threshold) {
  const double nd = static_cast<double>(n);
  return static_cast<double>(tp) / nd -
         (static_cast<double>(fp) / nd) * (threshold / (1.0 - threshold));
}

double TreatAllNetBenefit(double prevalence, double threshold) {
  return prevalence - (1.0 - prevalence) * threshold / (1.0 - threshold);
}

std::vector<NetBenefitPoint> DecisionCurve(
    const PredictionSet& ps, std::span<const double> thresholds) {
  std::size_t positives = 0;
  for (int y : ps.y()) positives += y;
  const double prevalence =
      static_cast<double>(positives) / static_cast<double>(ps.size());
  std::vector<NetBenefitPoint> out;
  for (double t : thresholds) {
    if (!(t > 0.0 && t < 1.0)) {
      throw Error(ErrorCode::kArgument,
                  "decision threshold must lie strictly inside (0, 1)",
                  "thresholds");
    }
    NetBenefitPoint pt;
    pt.threshold = t;
    pt.n = ps.size();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps.p()[i] >= t) {
        if (ps.y()[i] == 1) ++pt.tp; else ++pt.fp;
      }
    }
    pt.net_benefit = NetBenefit(pt.tp, pt.fp, pt.n, t);
    pt.treat_all = TreatAllNetBenefit(prevalence, t);
    pt.treat_none = 0.0;
    out.push_back(pt);
  }
  return out;
}

std::vector<double> DefaultDcaThresholds() {
  std::vector<double> t;
  for (int i = 1; i <= 99; ++i) t.push_back(i / 100.0);
  return t;
}

ClassificationReport Classify(std::span<const int> y,
                              std::span<const int> y_hat) {
  if (y.size() != y_hat.size()) {
    throw Error(ErrorCode::kArgument, "label vectors are not aligned");
  }
  ClassificationReport r;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y_hat[i] == 1) {
      if (y[i] == 1) ++r.tp; else ++r.fp;
    } else {
      if (y[i] == 1) ++r.fn; else ++r.tn;
    }
  }
  const std::size_t n = r.total();
  r.accuracy = n ? static_cast<double>(r.tp + r.tn) / static_cast<double>(n)
                 : 0.0;
  if (r.tp + r.fp > 0) {
    r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  }
  if (r.tp + r.fn > 0) {
    r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  }
  return r;
}

ClassificationReport ClassificationReportOf(const PredictionSet& ps) {
  return Classify(ps.y(), ps.y_hat());
}

std::string ReliabilityToCsv(const BinnedReliability& curve) {
  std::string out =
      "bin,lower,upper,count,mean_predicted,observed_rate,accuracy\n";
  for (std::size_t b = 0; b < curve.bins.size(); ++b) {
    const auto& bin = curve.bins[b];
    out += csv::JoinRow({std::to_string(b), csv::FormatNumber(bin.lower),
                         csv::FormatNumber(bin.upper),
                         std::to_string(bin.count),
                         csv::FormatNumber(bin.mean_predicted),
                         csv::FormatNumber(bin.observed_rate),
                         csv::FormatNumber(bin.accuracy)});
    out += '\n';
  }
  return out;
}

std::string DecisionCurveToCsv(const std::vector<NetBenefitPoint>& curve) {
  std::string out = "threshold,tp,fp,n,net_benefit,treat_all,treat_none\n";
  for (const auto& pt : curve) {
    out += csv::JoinRow({csv::FormatNumber(pt.threshold),
                         std::to_string(pt.tp), std::to_string(pt.fp),
                         std::to_string(pt.n),
                         csv::FormatNumber(pt.net_benefit),
                         csv::FormatNumber(pt.treat_all),
                         csv::FormatNumber(pt.treat_none)});
    out += '\n';
  }
  return out;
}

}  // namespace pcosrisk
