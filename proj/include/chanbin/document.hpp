#pragma once

#include <array>
#include <string>
#include <string_view>

#include "chanbin/evaluation.hpp"
#include "chanbin/gla.hpp"
#include "chanbin/image.hpp"
#include "chanbin/pipeline.hpp"
#include "chanbin/report.hpp"

namespace chanbin {

inline constexpr int kSchemaVersion = 1;

/// What `extract` emits: the input path, the configuration used and the
/// per-channel dominant values.
struct ResultDocument {
  std::string image;
  ExtractionConfig config;
  std::array<ChannelReport, 3> channels;
};

/// Percent rounded half away from zero to two decimals.
double round_percent(double percent) noexcept;

/// Values serialise as integers and percents with two decimals unless
/// full_precision is set. Output is deterministic, keys in a fixed order.
std::string result_to_json(const ResultDocument& doc, bool full_precision = false);
std::string result_to_csv(const ResultDocument& doc, bool full_precision = false);

/// Throws Errc::SchemaMismatch on anything that is not a valid document.
ResultDocument parse_result_json(std::string_view text);
std::array<ChannelReport, 3> parse_result_csv(std::string_view text);

/// {"stripes":[{"color":[r,g,b],"fraction":f}...],"noise_sigma":s,"seed":n}.
/// Throws Errc::InvalidSpec.
CompositionSpec parse_composition_spec(std::string_view text);
std::string composition_spec_to_json(const CompositionSpec& spec);

std::string error_report_to_json(const ErrorReport& report);

struct ComparisonDocument {
  std::string image;
  GlaConfig gla;
  std::array<ComparisonRecord, 3> channels;
  bool include_timings = true;
};

std::string comparison_to_json(const ComparisonDocument& doc);
std::string comparison_to_csv(const ComparisonDocument& doc);

}  // namespace chanbin
