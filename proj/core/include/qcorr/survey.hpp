#pragma once

// Seeded Monte-Carlo surveys over a state family plus the binned and
// extremal statistics extracted from them.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcorr/ensembles.hpp"
#include "qcorr/localize.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/monogamy.hpp"

namespace qcorr {

struct ComputeFlags {
  bool monogamy = false;
  bool alpha_c = false;
  bool localize = false;       // pair value at every alpha
  bool localized_sum = false;  // at lqc_sum_alpha
  bool bipartite_sum = false;
};

struct SurveyConfig {
  StateFamily family = family::HaarRandom{3};
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  std::vector<QcMeasure> measures;
  std::vector<double> alphas{1.0};
  ComputeFlags compute;
  double bin_width = 0.05;
  int nodal = 0;
  QubitPair pair{0, 1};
  double lqc_sum_alpha = 1.0;
  LocalizeOptions localize;
  ExponentGrid exponent_grid;
  int workers = 1;
};

/// Throws std::invalid_argument for infeasible configurations, before any
/// sampling happens.
void validate(const SurveyConfig& config);

struct MeasureValue {
  QcMeasure measure;
  double alpha;
  double value;
};

struct MeasureExponent {
  QcMeasure measure;
  CriticalExponent alpha_c;
};

struct SurveyRecord {
  std::uint64_t sample_index = 0;
  double ggm = 0.0;
  std::vector<MeasureValue> scores;
  std::vector<MeasureExponent> alpha_c;
  std::vector<MeasureValue> lqc_pair;
  std::vector<MeasureValue> lqc_sum;
  std::vector<MeasureValue> bisum;

  std::optional<double> score(QcMeasure m, double alpha) const;
  std::optional<double> localized(QcMeasure m, double alpha) const;
  std::optional<double> localized_total(QcMeasure m) const;
  std::optional<double> bipartite(QcMeasure m, double alpha) const;
  std::optional<CriticalExponent> critical(QcMeasure m) const;
  bool any_violation() const;
};

/// Computes one record from an explicit state.
SurveyRecord compute_record(const SurveyConfig& config, const PureState& state,
                            std::uint64_t sample_index);

using RecordSink = std::function<void(const SurveyRecord&)>;

/// Emits exactly config.samples records in sample_index order. Record i
/// depends only on (config, i), whatever the worker count.
void run_survey(const SurveyConfig& config, const RecordSink& sink);
std::vector<SurveyRecord> run_survey(const SurveyConfig& config);

std::string csv_header(const SurveyConfig& config);
std::string csv_row(const SurveyConfig& config, const SurveyRecord& record);
/// Runs the survey and streams header plus rows to `out`.
void write_survey_csv(const SurveyConfig& config, std::ostream& out,
                      const RecordSink& observer = {});

/// printf("%.9g").
std::string format_real(double v);
/// Compact exponent label used in column names: 0.5, 1, 2.
std::string format_alpha(double alpha);

struct Histogram {
  double bin_width = 0.05;
  std::vector<double> bin_edges;  // size bins + 1, starting at 0
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  std::uint64_t total = 0;
};

/// Uniform bins from 0; a value on an edge belongs to the upper bin.
/// Non-finite values are skipped, negative values rejected.
Histogram histogram(std::span<const double> values, double bin_width);

/// Bin index of a nonnegative value under the histogram edge rule.
std::size_t bin_index(double value, double bin_width);

struct BinFraction {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t population = 0;
  std::uint64_t violating = 0;
  std::optional<double> fraction;  // empty for unpopulated bins
};

/// Share of non-monogamous records per GGM bin.
std::vector<BinFraction> fraction_nonmonogamous(std::span<const SurveyRecord> records, QcMeasure m,
                                                double alpha, double bin_width);

struct CriticalGgm {
  double value = 0.0;  // 0 when nothing violates
  bool any_violation = false;
};

/// Largest GGM among violating records.
CriticalGgm critical_ggm(std::span<const SurveyRecord> records, QcMeasure m, double alpha);

struct SummaryStats {
  double mean = 0.0;
  double sd = 0.0;  // population (1/n)
  double min = 0.0;
  double max = 0.0;
  std::uint64_t count = 0;
};

SummaryStats summary_stats(std::span<const double> values);

/// Streaming mean/SD/min/max (Welford).
class RunningStats {
 public:
  void add(double v) noexcept;
  std::uint64_t count() const noexcept { return n_; }
  SummaryStats summary() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

enum class LocalizedColumn { Pair, Sum };

struct ExtremalLocalization {
  double min_value = 0.0;
  double ggm_at_min = 0.0;
  std::uint64_t index_at_min = 0;
  double max_value = 0.0;
  double ggm_at_max = 0.0;
  std::uint64_t index_at_max = 0;
};

/// Arg-min and arg-max over the localized column; ties go to the lowest
/// sample index.
ExtremalLocalization extremal_localization(std::span<const SurveyRecord> records, QcMeasure m,
                                           double alpha = 1.0,
                                           LocalizedColumn column = LocalizedColumn::Pair);

std::vector<double> ggm_column(std::span<const SurveyRecord> records);

}  // namespace qcorr
