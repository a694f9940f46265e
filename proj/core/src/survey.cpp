#include "qcorr/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace qcorr {

namespace {

bool same_alpha(double a, double b) noexcept { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

std::optional<double> find_value(const std::vector<MeasureValue>& values, QcMeasure m, double alpha) {
  for (const auto& v : values)
    if (v.measure == m && same_alpha(v.alpha, alpha)) return v.value;
  return std::nullopt;
}

bool needs_measures(const ComputeFlags& c) {
  return c.monogamy || c.alpha_c || c.localize || c.localized_sum || c.bipartite_sum;
}

std::string pair_label(QubitPair p) {
  const int a = std::min(p.first, p.second) + 1;
  const int b = std::max(p.first, p.second) + 1;
  return "pair" + std::to_string(a) + std::to_string(b);
}

}  // namespace

std::optional<double> SurveyRecord::score(QcMeasure m, double alpha) const {
  return find_value(scores, m, alpha);
}

std::optional<double> SurveyRecord::localized(QcMeasure m, double alpha) const {
  return find_value(lqc_pair, m, alpha);
}

std::optional<double> SurveyRecord::localized_total(QcMeasure m) const {
  for (const auto& v : lqc_sum)
    if (v.measure == m) return v.value;
  return std::nullopt;
}

std::optional<double> SurveyRecord::bipartite(QcMeasure m, double alpha) const {
  return find_value(bisum, m, alpha);
}

std::optional<CriticalExponent> SurveyRecord::critical(QcMeasure m) const {
  for (const auto& v : alpha_c)
    if (v.measure == m) return v.alpha_c;
  return std::nullopt;
}

bool SurveyRecord::any_violation() const {
  return std::any_of(scores.begin(), scores.end(),
                     [](const MeasureValue& v) { return v.value < kViolationThreshold; });
}

void validate(const SurveyConfig& c) {
  validate(c.family);
  const int n = num_qubits(c.family);
  if (c.samples < 1) throw std::invalid_argument("survey: samples must be >= 1");
  if (!(c.bin_width > 0.0 && c.bin_width <= 0.5)) {
    throw std::invalid_argument("survey: bin width must lie in (0, 0.5]");
  }
  if (c.workers < 1) throw std::invalid_argument("survey: workers must be >= 1");
  for (double a : c.alphas)
    if (!(a > 0.0)) throw std::invalid_argument("survey: exponents must be > 0");
  if (!(c.lqc_sum_alpha > 0.0)) throw std::invalid_argument("survey: exponents must be > 0");
  if (!needs_measures(c.compute)) return;
  if (c.measures.empty()) throw std::invalid_argument("survey: no correlation measure selected");
  if (n < 3) {
    throw std::invalid_argument("survey: monogamy and localization need at least three qubits (family has " +
                                std::to_string(n) + ")");
  }
  if ((c.compute.monogamy || c.compute.localize || c.compute.bipartite_sum) && c.alphas.empty()) {
    throw std::invalid_argument("survey: no exponent given");
  }
  if (c.nodal < 0 || c.nodal >= n) throw std::invalid_argument("survey: nodal qubit out of range");
  const auto [i, j] = c.pair;
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw std::invalid_argument("survey: localization pair out of range");
  }
  if (c.localize.restarts < 1) throw std::invalid_argument("survey: restarts must be >= 1");
}

SurveyRecord compute_record(const SurveyConfig& c, const PureState& state, std::uint64_t index) {
  SurveyRecord r;
  r.sample_index = index;
  r.ggm = ggm(state);
  const bool mono_terms = c.compute.monogamy || c.compute.alpha_c || c.compute.bipartite_sum;
  for (QcMeasure m : c.measures) {
    if (mono_terms) {
      const auto terms = monogamy_terms(state, m, c.nodal);
      if (c.compute.monogamy)
        for (double a : c.alphas) r.scores.push_back({m, a, terms.score(a)});
      if (c.compute.alpha_c) r.alpha_c.push_back({m, critical_exponent(terms, c.exponent_grid)});
      if (c.compute.bipartite_sum)
        for (double a : c.alphas) r.bisum.push_back({m, a, terms.pair_sum(a)});
    }
    if (c.compute.localize) {
      for (double a : c.alphas) r.lqc_pair.push_back({m, a, localize(state, c.pair, m, a, c.localize).value});
    }
    if (c.compute.localized_sum) {
      r.lqc_sum.push_back({m, c.lqc_sum_alpha, localized_sum(state, m, c.lqc_sum_alpha, c.nodal, c.localize)});
    }
  }
  return r;
}

void run_survey(const SurveyConfig& c, const RecordSink& sink) {
  validate(c);
  const auto workers = static_cast<std::size_t>(c.workers);
  const std::uint64_t block = 64 * workers;
  auto compute = [&](std::uint64_t i) {
    return compute_record(c, sample(c.family, SeedSpec{c.seed, i}), i);
  };

  std::vector<std::optional<SurveyRecord>> buffer;
  for (std::uint64_t start = 0; start < c.samples; start += block) {
    const auto count = static_cast<std::size_t>(std::min(block, c.samples - start));
    buffer.assign(count, std::nullopt);
    if (workers == 1) {
      for (std::size_t k = 0; k < count; ++k) buffer[k] = compute(start + k);
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, count); ++w) {
          pool.emplace_back([&] {
            try {
              for (std::size_t k; (k = next.fetch_add(1)) < count;) buffer[k] = compute(start + k);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              next.store(count);
            }
          });
        }
      }
      if (failure) std::rethrow_exception(failure);
    }
    for (auto& rec : buffer) sink(*rec);
  }
}

std::vector<SurveyRecord> run_survey(const SurveyConfig& c) {
  std::vector<SurveyRecord> out;
  out.reserve(static_cast<std::size_t>(c.samples));
  run_survey(c, [&](const SurveyRecord& r) { out.push_back(r); });
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_alpha(double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

std::string csv_header(const SurveyConfig& c) {
  std::string h = "sample_index,family,n,ggm";
  auto add = [&](const std::string& col) { h += "," + col; };
  if (c.compute.monogamy)
    for (QcMeasure m : c.measures)
      for (double a : c.alphas) add(std::string(measure_key(m)) + "_score_a" + format_alpha(a));
  if (c.compute.alpha_c)
    for (QcMeasure m : c.measures) add(std::string(measure_key(m)) + "_alpha_c");
  if (c.compute.localize)
    for (QcMeasure m : c.measures)
      for (double a : c.alphas)
        add(std::string(measure_key(m)) + "_lqc_" + pair_label(c.pair) + "_a" + format_alpha(a));
  if (c.compute.localized_sum)
    for (QcMeasure m : c.measures) add(std::string(measure_key(m)) + "_lqc_sum");
  if (c.compute.bipartite_sum)
    for (QcMeasure m : c.measures)
      for (double a : c.alphas) add(std::string(measure_key(m)) + "_bisum_a" + format_alpha(a));
  if (c.compute.monogamy) add("any_violation");
  return h;
}

std::string csv_row(const SurveyConfig& c, const SurveyRecord& r) {
  std::string row = std::to_string(r.sample_index) + "," + family_label(c.family) + "," +
                    std::to_string(num_qubits(c.family)) + "," + format_real(r.ggm);
  auto add = [&](double v) { row += "," + format_real(v); };
  // Field order mirrors csv_header and compute_record.
  auto add_all = [&](const std::vector<MeasureValue>& values) {
    for (QcMeasure m : c.measures)
      for (const auto& v : values)
        if (v.measure == m) add(v.value);
  };
  if (c.compute.monogamy) add_all(r.scores);
  if (c.compute.alpha_c)
    for (QcMeasure m : c.measures) add(r.critical(m).value_or(CriticalExponent{}).value);
  if (c.compute.localize) add_all(r.lqc_pair);
  if (c.compute.localized_sum) add_all(r.lqc_sum);
  if (c.compute.bipartite_sum) add_all(r.bisum);
  if (c.compute.monogamy) row += r.any_violation() ? ",1" : ",0";
  return row;
}

void write_survey_csv(const SurveyConfig& c, std::ostream& out, const RecordSink& observer) {
  validate(c);
  out << csv_header(c) << '\n';
  run_survey(c, [&](const SurveyRecord& r) {
    out << csv_row(c, r) << '\n';
    if (observer) observer(r);
  });
  out.flush();
}

std::size_t bin_index(double value, double bin_width) {
  auto b = static_cast<std::size_t>(std::floor(value / bin_width));
  // Edges are b * bin_width in floating point; a value within rounding of an
  // edge counts as on it.
  constexpr double rel = 1e-12;
  const double upper = static_cast<double>(b + 1) * bin_width;
  if (upper - value <= rel * upper) ++b;
  const double lower = static_cast<double>(b) * bin_width;
  if (b > 0 && lower - value > rel * lower) --b;
  return b;
}

Histogram histogram(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram: bin width must be > 0");
  Histogram h;
  h.bin_width = bin_width;
  double max = -1.0;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    if (v < 0.0) throw std::invalid_argument("histogram: negative value");
    max = std::max(max, v);
  }
  if (max < 0.0) return h;
  const std::size_t bins = bin_index(max, bin_width) + 1;
  h.counts.assign(bins, 0);
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    ++h.counts[bin_index(v, bin_width)];
    ++h.total;
  }
  h.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.bin_edges[b] = static_cast<double>(b) * bin_width;
  h.frequencies.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    h.frequencies[b] = static_cast<double>(h.counts[b]) / static_cast<double>(h.total);
  }
  return h;
}

std::vector<BinFraction> fraction_nonmonogamous(std::span<const SurveyRecord> records, QcMeasure m,
                                                double alpha, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("fraction_nonmonogamous: bad bin width");
  std::vector<BinFraction> bins;
  for (const auto& r : records) {
    const auto s = r.score(m, alpha);
    if (!s) {
      throw std::invalid_argument("fraction_nonmonogamous: records lack " +
                                  std::string(measure_key(m)) + " scores at alpha " + format_alpha(alpha));
    }
    const std::size_t b = bin_index(r.ggm, bin_width);
    if (b >= bins.size()) {
      const std::size_t old = bins.size();
      bins.resize(b + 1);
      for (std::size_t k = old; k <= b; ++k) {
        bins[k].lo = static_cast<double>(k) * bin_width;
        bins[k].hi = static_cast<double>(k + 1) * bin_width;
      }
    }
    ++bins[b].population;
    if (*s < kViolationThreshold) ++bins[b].violating;
  }
  for (auto& b : bins) {
    if (b.population > 0) b.fraction = static_cast<double>(b.violating) / static_cast<double>(b.population);
  }
  return bins;
}

CriticalGgm critical_ggm(std::span<const SurveyRecord> records, QcMeasure m, double alpha) {
  CriticalGgm out;
  for (const auto& r : records) {
    const auto s = r.score(m, alpha);
    if (!s) throw std::invalid_argument("critical_ggm: records lack the requested scores");
    if (*s < kViolationThreshold) {
      out.value = out.any_violation ? std::max(out.value, r.ggm) : r.ggm;
      out.any_violation = true;
    }
  }
  return out;
}

void RunningStats::add(double v) noexcept {
  ++n_;
  if (n_ == 1) {
    min_ = max_ = v;
  } else {
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
  const double delta = v - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (v - mean_);
}

SummaryStats RunningStats::summary() const {
  if (n_ == 0) throw std::invalid_argument("summary_stats: no values");
  return {mean_, std::sqrt(std::max(0.0, m2_ / static_cast<double>(n_))), min_, max_, n_};
}

SummaryStats summary_stats(std::span<const double> values) {
  RunningStats rs;
  for (double v : values) rs.add(v);
  return rs.summary();
}

ExtremalLocalization extremal_localization(std::span<const SurveyRecord> records, QcMeasure m,
                                           double alpha, LocalizedColumn column) {
  ExtremalLocalization out;
  bool first = true;
  for (const auto& r : records) {
    const auto v = column == LocalizedColumn::Pair ? r.localized(m, alpha) : r.localized_total(m);
    if (!v) throw std::invalid_argument("extremal_localization: records lack localized values");
    if (first || *v < out.min_value || (*v == out.min_value && r.sample_index < out.index_at_min)) {
      out.min_value = *v;
      out.ggm_at_min = r.ggm;
      out.index_at_min = r.sample_index;
    }
    if (first || *v > out.max_value || (*v == out.max_value && r.sample_index < out.index_at_max)) {
      out.max_value = *v;
      out.ggm_at_max = r.ggm;
      out.index_at_max = r.sample_index;
    }
    first = false;
  }
  if (first) throw std::invalid_argument("extremal_localization: no records");
  return out;
}

std::vector<double> ggm_column(std::span<const SurveyRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.ggm);
  return out;
}

}  // namespace qcorr
