#include "chanbin/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "chanbin/document.hpp"
#include "chanbin/error.hpp"
#include "chanbin/evaluation.hpp"
#include "chanbin/gla.hpp"
#include "chanbin/image.hpp"
#include "chanbin/pipeline.hpp"

namespace chanbin::cli {

namespace {

// Failure with a fixed exit code, thrown by the subcommand handlers.
struct Exit {
  int code;
  std::string message;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitFailure, "cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void emit(const std::string& path, std::string_view data, std::ostream& out) {
  if (path.empty()) {
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!file) throw Exit{kExitFailure, "cannot write '" + path + "'"};
}

void emit(const std::string& path, const std::vector<std::uint8_t>& data, std::ostream& out) {
  emit(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()), out);
}

RgbImage load_image(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Exit{kExitFailure, "'" + path + "': " + e.what()};
  }
}

struct ExtractFlags {
  std::string rho_mode = "distinct";
  double thresh_count_pct = MergeConfig{}.thresh_count_pct;
  double thresh_distance = MergeConfig{}.thresh_distance;
  int max_colors = *MergeConfig{}.max_colors;
  bool no_max_colors = false;

  void attach(CLI::App& app) {
    app.add_option("--rho-mode", rho_mode, "Sequence rho averages over: distinct values or all pixels")
        ->check(CLI::IsMember({"distinct", "all"}));
    app.add_option("--thresh-count-pct", thresh_count_pct, "Merge bins holding fewer than this percent of pixels")
        ->check(CLI::Range(0.0, 100.0));
    app.add_option("--thresh-distance", thresh_distance, "Merge bins whose nearest centroid is closer than this")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--max-colors", max_colors, "Cap on dominant values per channel")->check(CLI::PositiveNumber);
    app.add_flag("--no-max-colors", no_max_colors, "Do not cap the number of dominant values");
  }

  ExtractionConfig config() const {
    ExtractionConfig c;
    c.binning.rho_mode = rho_mode == "all" ? ValueMode::AllPixels : ValueMode::Distinct;
    c.merge.thresh_count_pct = thresh_count_pct;
    c.merge.thresh_distance = thresh_distance;
    if (no_max_colors)
      c.merge.max_colors.reset();
    else
      c.merge.max_colors = max_colors;
    return c;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dominant colour pixel values by channelized binning"};
  app.name("chanbin");
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "Extract dominant values per channel from an image");
  std::string extract_image;
  std::string extract_format = "json";
  std::string extract_out;
  bool full_precision = false;
  bool parallel = false;
  ExtractFlags extract_flags;
  extract->add_option("image", extract_image, "PPM, PNG or JPEG input")->required();
  extract->add_option("--format", extract_format)->check(CLI::IsMember({"json", "csv"}));
  extract->add_option("--out", extract_out, "Write here instead of stdout");
  extract->add_flag("--full-precision", full_precision, "Emit unrounded centroids and percents");
  extract->add_flag("--parallel", parallel, "Process the three channels concurrently");
  extract_flags.attach(*extract);

  // generate
  auto* generate = app.add_subcommand("generate", "Render a stripe image of known composition");
  std::string spec_path;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string generate_out;
  std::string truth_out;
  generate->add_option("--spec", spec_path, "Composition spec JSON")->required();
  generate->add_option("--width", width)->required()->check(CLI::PositiveNumber);
  generate->add_option("--height", height)->required()->check(CLI::PositiveNumber);
  generate->add_option("--out", generate_out, "PPM output path (stdout if omitted)");
  generate->add_option("--truth-out", truth_out, "Also write the realised composition as a result document");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Mean pair distance between estimated and actual documents");
  std::string estimated_path;
  std::string actual_path;
  evaluate->add_option("--estimated", estimated_path)->required();
  evaluate->add_option("--actual", actual_path)->required();

  // compare
  auto* compare = app.add_subcommand("compare", "Run channelized binning and the Lloyd baseline side by side");
  std::string compare_image;
  int k = 0;
  std::uint64_t seed = 0;
  std::string init = "uniform_spread";
  std::string compare_format = "json";
  std::string compare_out;
  bool omit_timings = false;
  ExtractFlags compare_flags;
  compare->add_option("image", compare_image)->required();
  compare->add_option("--k", k, "Cluster count handed to the baseline")->required();
  compare->add_option("--seed", seed);
  compare->add_option("--init", init)->check(CLI::IsMember({"uniform_spread", "seeded_random"}));
  compare->add_option("--format", compare_format)->check(CLI::IsMember({"json", "csv"}));
  compare->add_option("--out", compare_out);
  compare->add_flag("--omit-timings", omit_timings, "Leave wall-clock times out of the record");
  compare_flags.attach(*compare);

  // swatch
  auto* swatch = app.add_subcommand("swatch", "Draw a result document as per-channel colour bands");
  std::string swatch_doc;
  std::string swatch_out;
  std::size_t bar_height = 32;
  std::size_t swatch_width = 256;
  swatch->add_option("result", swatch_doc)->required();
  swatch->add_option("--out", swatch_out)->required();
  swatch->add_option("--bar-height", bar_height)->check(CLI::PositiveNumber);
  swatch->add_option("--width", swatch_width)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (extract->parsed()) {
      const RgbImage image = load_image(extract_image);
      ResultDocument doc;
      doc.image = extract_image;
      doc.config = extract_flags.config();
      try {
        doc.channels = extract_dominant_colors(image, doc.config, parallel ? Execution::Parallel : Execution::Sequential);
      } catch (const Error& e) {
        throw Exit{kExitFailure, "'" + extract_image + "': " + e.what()};
      }
      emit(extract_out,
           extract_format == "csv" ? result_to_csv(doc, full_precision) : result_to_json(doc, full_precision), out);
    } else if (generate->parsed()) {
      CompositionSpec spec;
      RgbImage image;
      try {
        spec = parse_composition_spec(read_text(spec_path));
        image = generate_stripes(spec, width, height);
      } catch (const Error& e) {
        throw Exit{kExitUsage, "'" + spec_path + "': " + e.what()};
      }
      emit(generate_out, write_ppm(image), out);
      if (!truth_out.empty()) {
        ResultDocument truth;
        truth.image = generate_out;
        truth.channels = realised_composition(spec, width);
        emit(truth_out, result_to_json(truth), out);
      }
    } else if (evaluate->parsed()) {
      ResultDocument estimated;
      ResultDocument actual;
      try {
        estimated = parse_result_json(read_text(estimated_path));
        actual = parse_result_json(read_text(actual_path));
      } catch (const Error& e) {
        throw Exit{kExitUsage, e.what()};
      }
      ErrorReport report;
      try {
        report = image_epsilon(estimated.channels, actual.channels);
      } catch (const Error& e) {
        throw Exit{kExitUsage, e.what()};
      }
      out << error_report_to_json(report);
    } else if (compare->parsed()) {
      const RgbImage image = load_image(compare_image);
      ComparisonDocument doc;
      doc.image = compare_image;
      doc.gla.k = k;
      doc.gla.seed = seed;
      doc.gla.init = init == "seeded_random" ? GlaInit::SeededRandom : GlaInit::UniformSpread;
      doc.include_timings = !omit_timings;
      const auto hists = split_channels(image);
      try {
        for (ChannelId id : kChannels) {
          const auto c = static_cast<std::size_t>(id);
          doc.channels[c] = compare_methods(hists[c], id, compare_flags.config(), doc.gla);
        }
      } catch (const Error& e) {
        throw Exit{kExitFailure, "'" + compare_image + "': " + e.what()};
      }
      emit(compare_out, compare_format == "csv" ? comparison_to_csv(doc) : comparison_to_json(doc), out);
    } else if (swatch->parsed()) {
      RgbImage image;
      try {
        const ResultDocument doc = parse_result_json(read_text(swatch_doc));
        image = render_swatch(doc.channels, bar_height, swatch_width);
      } catch (const Error& e) {
        throw Exit{kExitUsage, "'" + swatch_doc + "': " + e.what()};
      }
      emit(swatch_out, write_ppm(image), out);
    }
  } catch (const Exit& e) {
    err << "chanbin: " << e.message << '\n';
    return e.code;
  }
  return kExitOk;
}

}  // namespace chanbin::cli
