#include <doctest.h>

#include "miniconf/images.hpp"
#include "miniconf/ingest.hpp"
#include "../support/fixtures.hpp"

using namespace miniconf;
namespace ts = testing_support;

namespace {

std::map<std::string, std::string> paths(const ConferenceBundle& b) {
  std::map<std::string, std::string> out;
  for (const auto& p : b.papers) out[p.uid] = p.image_path.value_or("");
  return out;
}

}  // namespace

TEST_SUITE("images") {
  TEST_CASE("no images at all gives placeholders") {
    auto r = attach_images(load_conference(ts::fixture("conf3")), ts::fixture("conf3"));
    for (const auto& p : r.bundle.papers) CHECK(p.image_path == kPlaceholderImage);
    CHECK(r.counts.placeholder == 3);
  }

  TEST_CASE("priority: map, png, jpg, placeholder") {
    auto dir = ts::fixture("conf12");
    auto r = attach_images(load_conference(dir), dir);
    auto m = paths(r.bundle);
    CHECK(m["gan-paper"] == "images/figures/gan-override.png");
    CHECK(m["robust-training"] == "images/robust-training-fig.jpg");
    CHECK(m["vae-text"] == "images/vae-text.png");
    CHECK(m["robust-certified"] == "images/robust-certified.jpg");
    CHECK(m["graph-nets"] == kPlaceholderImage);
    CHECK(r.counts.from_map == 2);
    CHECK(r.counts.from_png == 1);
    CHECK(r.counts.from_jpg == 1);
    CHECK(r.counts.placeholder == 8);
  }

  TEST_CASE("png beats jpg for the same uid") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "images/p1.png", "png");
    ts::spit(dir / "images/p1.jpg", "jpg");
    ts::spit(dir / "images/p2.jpg", "jpg");
    auto m = paths(attach_images(load_conference(dir), dir).bundle);
    CHECK(m["p1"] == "images/p1.png");
    CHECK(m["p2"] == "images/p2.jpg");
  }

  TEST_CASE("idempotent and total") {
    auto dir = ts::fixture("conf12");
    auto once = attach_images(load_conference(dir), dir);
    auto twice = attach_images(once.bundle, dir);
    CHECK(once.bundle.papers == twice.bundle.papers);
    for (const auto& p : twice.bundle.papers) CHECK_FALSE(p.image_path.value_or("").empty());
  }

  TEST_CASE("map errors") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "images/ok.gif", "gif");
    ts::spit(dir / "outside.png", "png");
    ts::spit(dir / "image_map.csv",
             "uid,image_path\np1,images/missing.png\np2,images/ok.gif\np3,../outside.png\n");
    try {
      attach_images(load_conference(dir), dir);
      FAIL("expected ImageAttachError");
    } catch (const ImageAttachError& e) {
      CHECK(e.problems().size() == 3);
    }
  }

  TEST_CASE("unknown uid in the map warns") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "images/a.png", "png");
    ts::spit(dir / "image_map.csv", "uid,image_path\nghost,a.png\n");
    std::vector<std::string> log;
    auto r = attach_images(load_conference(dir), dir, [&](std::string_view l) { log.emplace_back(l); });
    CHECK(r.counts.placeholder == 3);
    bool warned = false;
    for (const auto& l : log) warned |= l.find("ghost") != std::string::npos;
    CHECK(warned);
  }
}
