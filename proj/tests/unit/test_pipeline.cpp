#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chanbin/error.hpp"
#include "chanbin/evaluation.hpp"
#include "chanbin/image.hpp"
#include "chanbin/pipeline.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace chanbin;

namespace {

void check_exact(const std::array<ChannelReport, 3>& got, const std::array<ChannelReport, 3>& want) {
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(got[c].channel == want[c].channel);
    REQUIRE(got[c].colors.size() == want[c].colors.size());
    for (std::size_t i = 0; i < got[c].colors.size(); ++i) {
      CHECK(got[c].colors[i].value == want[c].colors[i].value);
      CHECK(got[c].colors[i].percent == doctest::Approx(want[c].colors[i].percent).epsilon(1e-12));
    }
  }
}

}  // namespace

TEST_CASE("noiseless two-colour stripes are recovered exactly") {
  const auto spec = fixture::spec("table1_1");
  const auto img = generate_stripes(spec, 256, 384);
  const auto got = extract_dominant_colors(img, ExtractionConfig{});
  const std::array<ChannelReport, 3> want = {ChannelReport{ChannelId::Red, {{237, 50.0}, {255, 50.0}}},
                                             ChannelReport{ChannelId::Green, {{28, 50.0}, {242, 50.0}}},
                                             ChannelReport{ChannelId::Blue, {{0, 50.0}, {36, 50.0}}}};
  check_exact(got, want);
  CHECK(image_epsilon(got, want).image_epsilon == 0.0);
}

TEST_CASE("all three constructed compositions are recovered exactly") {
  for (const char* name : {"table1_1", "table1_2", "table1_3"}) {
    CAPTURE(name);
    const auto spec = fixture::spec(name);
    const auto truth = realised_composition(spec, 256);
    const auto got = extract_dominant_colors(generate_stripes(spec, 256, 384), ExtractionConfig{});
    check_exact(got, truth);
    CHECK(image_epsilon(got, truth).image_epsilon <= 1e-9);
  }
}

TEST_CASE("constant image yields one value per channel") {
  const RgbImage img(7, 5, Rgb{128, 128, 128});
  for (const auto& r : extract_dominant_colors(img, ExtractionConfig{})) {
    REQUIRE(r.colors.size() == 1);
    CHECK(r.colors[0].value == 128.0);
    CHECK(r.colors[0].percent == 100.0);
  }
}

TEST_CASE("invalid configurations are rejected") {
  const RgbImage img(2, 2, Rgb{1, 2, 3});
  ExtractionConfig config;
  config.binning.max_recursion_depth = 10;
  CHECK_THROWS_AS(extract_dominant_colors(img, config), Error);
  config = {};
  config.merge.thresh_count_pct = -1;
  CHECK_THROWS_AS(extract_dominant_colors(img, config), Error);
  CHECK_THROWS_AS(extract_dominant_colors(RgbImage{}, ExtractionConfig{}), Error);
}

TEST_CASE("channels are processed independently") {
  gen::Rng rng(601);
  for (int trial = 0; trial < 50; ++trial) {
    auto img = gen::random_image(rng);
    const auto before = extract_dominant_colors(img, ExtractionConfig{});
    // rewrite the red channel entirely; green and blue reports must not move
    for (Rgb& p : img.pixels()) p.r = static_cast<std::uint8_t>(rng());
    const auto after = extract_dominant_colors(img, ExtractionConfig{});
    CHECK(after[1] == before[1]);
    CHECK(after[2] == before[2]);
  }
}

TEST_CASE("property: extraction ignores pixel arrangement and parallel equals sequential") {
  gen::Rng rng(602);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto img = gen::random_image(rng);
    ExtractionConfig config;
    if (rng() % 2) config.binning.rho_mode = ValueMode::AllPixels;
    const auto base = extract_dominant_colors(img, config);

    std::vector<Rgb> shuffled(img.pixels().begin(), img.pixels().end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    // also reshape: only the multiset of pixels matters
    const RgbImage permuted(1, shuffled.size(), shuffled);
    CHECK(extract_dominant_colors(permuted, config) == base);

    if (trial % 10 == 0) CHECK(extract_dominant_colors(img, config, Execution::Parallel) == base);

    for (const auto& r : base) {
      double sum = 0.0;
      for (const auto& c : r.colors) sum += c.percent;
      CHECK(std::abs(sum - 100.0) <= 1e-6);
      CHECK(r.colors.size() <= 8);
    }
  }
}
