#include "chanbin/document.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "chanbin/error.hpp"

namespace chanbin {

using Json = nlohmann::ordered_json;

double round_percent(double percent) noexcept { return std::round(percent * 100.0) / 100.0; }

namespace {

int round_value(double value) { return static_cast<int>(std::floor(value + 0.5)); }

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json colors_json(const std::vector<DominantColor>& colors, bool full_precision) {
  Json arr = Json::array();
  for (const auto& c : colors) {
    Json entry;
    if (full_precision) {
      entry["value"] = c.value;
      entry["percent"] = c.percent;
    } else {
      entry["value"] = round_value(c.value);
      entry["percent"] = round_percent(c.percent);
    }
    arr.push_back(std::move(entry));
  }
  return arr;
}

Json config_json(const ExtractionConfig& config) {
  Json j;
  j["rho_mode"] = config.binning.rho_mode == ValueMode::Distinct ? "distinct" : "all";
  j["max_recursion_depth"] = config.binning.max_recursion_depth;
  j["thresh_count_pct"] = config.merge.thresh_count_pct;
  j["thresh_distance"] = config.merge.thresh_distance;
  j["max_colors"] = config.merge.max_colors ? Json(*config.merge.max_colors) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void schema_error(const std::string& what) { throw Error(Errc::SchemaMismatch, what); }

double number_field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number())
    schema_error(where + ": '" + key + "' must be a number");
  return obj[key].get<double>();
}

ExtractionConfig parse_config(const Json& j) {
  ExtractionConfig config;
  if (!j.is_object()) schema_error("config must be an object");
  if (j.contains("rho_mode")) {
    const auto mode = j["rho_mode"].is_string() ? j["rho_mode"].get<std::string>() : std::string();
    if (mode == "distinct")
      config.binning.rho_mode = ValueMode::Distinct;
    else if (mode == "all")
      config.binning.rho_mode = ValueMode::AllPixels;
    else
      schema_error("config.rho_mode must be 'distinct' or 'all'");
  }
  if (j.contains("max_recursion_depth"))
    config.binning.max_recursion_depth = static_cast<int>(number_field(j, "max_recursion_depth", "config"));
  if (j.contains("thresh_count_pct")) config.merge.thresh_count_pct = number_field(j, "thresh_count_pct", "config");
  if (j.contains("thresh_distance")) config.merge.thresh_distance = number_field(j, "thresh_distance", "config");
  if (j.contains("max_colors")) {
    if (j["max_colors"].is_null())
      config.merge.max_colors.reset();
    else
      config.merge.max_colors = static_cast<int>(number_field(j, "max_colors", "config"));
  }
  return config;
}

}  // namespace

std::string result_to_json(const ResultDocument& doc, bool full_precision) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["image"] = doc.image;
  j["config"] = config_json(doc.config);
  j["precision"] = full_precision ? "full" : "rounded";
  Json channels;
  for (const auto& report : doc.channels)
    channels[std::string(channel_name(report.channel))] = colors_json(report.colors, full_precision);
  j["channels"] = std::move(channels);
  return dump(j);
}

std::string result_to_csv(const ResultDocument& doc, bool full_precision) {
  std::ostringstream out;
  out << "channel,value,percent\n";
  for (const auto& report : doc.channels)
    for (const auto& c : report.colors) {
      out << channel_name(report.channel) << ',';
      if (full_precision)
        out << full(c.value) << ',' << full(c.percent) << '\n';
      else
        out << round_value(c.value) << ',' << fixed2(round_percent(c.percent)) << '\n';
    }
  return out.str();
}

ResultDocument parse_result_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema_error(std::string("not JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("document must be an object");
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
    schema_error("schema_version must be " + std::to_string(kSchemaVersion));

  ResultDocument doc;
  if (j.contains("image")) {
    if (!j["image"].is_string()) schema_error("image must be a string");
    doc.image = j["image"].get<std::string>();
  }
  if (j.contains("config")) doc.config = parse_config(j["config"]);
  if (!j.contains("channels") || !j["channels"].is_object()) schema_error("channels must be an object");

  for (ChannelId id : kChannels) {
    const std::string name(channel_name(id));
    auto& report = doc.channels[static_cast<std::size_t>(id)];
    report.channel = id;
    const Json& list = j["channels"].contains(name) ? j["channels"][name] : Json();
    if (!list.is_array() || list.empty()) schema_error("channels." + name + " must be a non-empty array");
    for (const Json& entry : list) {
      const double value = number_field(entry, "value", "channels." + name);
      const double percent = number_field(entry, "percent", "channels." + name);
      if (value < 0.0 || value > 255.0 || percent < 0.0 || percent > 100.0)
        schema_error("channels." + name + ": value or percent out of range");
      report.colors.push_back({value, percent});
    }
  }
  return doc;
}

std::array<ChannelReport, 3> parse_result_csv(std::string_view text) {
  std::array<ChannelReport, 3> out;
  for (ChannelId id : kChannels) out[static_cast<std::size_t>(id)].channel = id;

  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "channel,value,percent") schema_error("missing CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) schema_error("malformed CSV row: " + line);
    const std::string name = line.substr(0, c1);
    std::size_t index = 3;
    for (ChannelId id : kChannels)
      if (channel_name(id) == name) index = static_cast<std::size_t>(id);
    if (index == 3) schema_error("unknown channel in CSV row: " + line);
    try {
      out[index].colors.push_back({std::stod(line.substr(c1 + 1, c2 - c1 - 1)), std::stod(line.substr(c2 + 1))});
    } catch (const std::logic_error&) {
      schema_error("non-numeric CSV row: " + line);
    }
  }
  return out;
}

CompositionSpec parse_composition_spec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidSpec, std::string("not JSON: ") + e.what());
  }
  const auto bad = [](const std::string& what) { throw Error(Errc::InvalidSpec, what); };
  if (!j.is_object() || !j.contains("stripes") || !j["stripes"].is_array()) bad("'stripes' must be an array");

  CompositionSpec spec;
  for (const Json& s : j["stripes"]) {
    if (!s.is_object() || !s.contains("color") || !s["color"].is_array() || s["color"].size() != 3)
      bad("each stripe needs a 3-element 'color'");
    std::array<int, 3> rgb{};
    for (std::size_t i = 0; i < 3; ++i) {
      const Json& c = s["color"][i];
      if (!c.is_number_integer() || c.get<long long>() < 0 || c.get<long long>() > 255)
        bad("colour components must be integers in [0,255]");
      rgb[i] = c.get<int>();
    }
    if (!s.contains("fraction") || !s["fraction"].is_number()) bad("each stripe needs a numeric 'fraction'");
    spec.stripes.push_back({{static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]),
                             static_cast<std::uint8_t>(rgb[2])},
                            s["fraction"].get<double>()});
  }
  if (j.contains("noise_sigma")) {
    if (!j["noise_sigma"].is_number()) bad("'noise_sigma' must be a number");
    spec.noise_sigma = j["noise_sigma"].get<double>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      bad("'seed' must be a non-negative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  validate(spec);
  return spec;
}

std::string composition_spec_to_json(const CompositionSpec& spec) {
  Json j;
  Json stripes = Json::array();
  for (const auto& s : spec.stripes) {
    Json entry;
    entry["color"] = {s.color.r, s.color.g, s.color.b};
    entry["fraction"] = s.fraction;
    stripes.push_back(std::move(entry));
  }
  j["stripes"] = std::move(stripes);
  j["noise_sigma"] = spec.noise_sigma;
  j["seed"] = spec.seed;
  return dump(j);
}

std::string error_report_to_json(const ErrorReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json channels;
  for (const auto& ch : report.per_channel) {
    Json c;
    c["epsilon"] = ch.epsilon;
    Json pairs = Json::array();
    for (auto [e, a] : ch.matched_pairs) pairs.push_back({e, a});
    c["matched_pairs"] = std::move(pairs);
    c["unmatched_estimated"] = ch.unmatched_estimated;
    c["unmatched_actual"] = ch.unmatched_actual;
    channels[std::string(channel_name(ch.channel))] = std::move(c);
  }
  j["channels"] = std::move(channels);
  j["image_epsilon"] = report.image_epsilon;
  return dump(j);
}

std::string comparison_to_json(const ComparisonDocument& doc) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["image"] = doc.image;
  Json gla;
  gla["k"] = doc.gla.k;
  gla["init"] = doc.gla.init == GlaInit::UniformSpread ? "uniform_spread" : "seeded_random";
  gla["seed"] = doc.gla.seed;
  gla["max_iters"] = doc.gla.max_iters;
  gla["tol"] = doc.gla.tol;
  j["gla"] = std::move(gla);
  Json channels;
  for (const auto& rec : doc.channels) {
    Json c;
    c["binning_k"] = rec.binning_k;
    c["binning"] = colors_json(rec.binning.colors, false);
    c["gla"] = colors_json(rec.gla.colors, false);
    if (doc.include_timings) c["wall_times_ms"] = {{"binning", rec.binning_ms}, {"gla", rec.gla_ms}};
    channels[std::string(channel_name(rec.binning.channel))] = std::move(c);
  }
  j["channels"] = std::move(channels);
  return dump(j);
}

std::string comparison_to_csv(const ComparisonDocument& doc) {
  std::ostringstream out;
  out << "channel,method,value,percent\n";
  for (const auto& rec : doc.channels) {
    const auto name = channel_name(rec.binning.channel);
    for (const auto& c : rec.binning.colors)
      out << name << ",binning," << round_value(c.value) << ',' << fixed2(round_percent(c.percent)) << '\n';
    for (const auto& c : rec.gla.colors)
      out << name << ",gla," << round_value(c.value) << ',' << fixed2(round_percent(c.percent)) << '\n';
  }
  return out.str();
}

}  // namespace chanbin
