#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "sib/scenario.hpp"

namespace {

using sib::ConvexBody;
using sib::Vector;

Vector v2(double x, double y) { return Vector{{x, y}}; }

std::size_t count(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re),
                                                std::sregex_iterator()));
}

TEST(RenderSvg, Figure1) {
  sib::Scenario s = sib::load_scenario(SIB_SCENARIO_DIR "/figure1.json");
  s.solver.max_iters = 2000;
  s.solver.trace_every = 100;
  const sib::SolveReport report = solve(s.problem, s.solver);
  const std::string svg = render_svg(s.problem, &report);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "<rect class=\"target\""), 8u);
  EXPECT_EQ(count(svg, "<circle class=\"constraint\""), 1u);
  EXPECT_EQ(count(svg, "<path class=\"solution\""), 1u);
  EXPECT_EQ(count(svg, "<polyline class=\"iterates\""), 1u);
  // y is flipped: the disk centre (-7, -4) is drawn at cy = 4.
  EXPECT_NE(svg.find("cx=\"-7\" cy=\"4\" r=\"4\""), std::string::npos);
}

TEST(RenderSvg, PointTargetAndHalfspaceConstraint) {
  const sib::PolyhedralDynamic dyn({{v2(1, 0), 1.0}, {v2(0, 1), 1.0}});
  const sib::SibProblem p(dyn, {ConvexBody::point(v2(2, 2))},
                          ConvexBody::halfspaces({{v2(1, 0), 1.0}, {v2(-1, 0), 1.0}, {v2(0, 1), 1.0}, {v2(0, -1), 1.0}}));
  sib::SolverConfig config;
  config.x0 = v2(0, 0);
  config.max_iters = 20;
  const sib::SolveReport report = solve(p, config);
  const std::string svg = render_svg(p, &report);
  EXPECT_EQ(count(svg, "<circle class=\"target point\""), 1u);
  EXPECT_EQ(count(svg, "<polygon class=\"constraint\""), 1u);
  EXPECT_EQ(count(svg, "<path class=\"solution\""), 1u);
  // The clipped square has four vertices.
  const std::smatch m = [&] {
    std::smatch out;
    std::regex_search(svg, out, std::regex("<polygon class=\"constraint\" points=\"([^\"]*)\""));
    return out;
  }();
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(count(m[1].str(), ","), 4u);
}

TEST(RenderSvg, WithoutReport) {
  const sib::Scenario s = sib::load_scenario(SIB_SCENARIO_DIR "/figure1.json");
  const std::string svg = render_svg(s.problem, nullptr);
  EXPECT_EQ(count(svg, "class=\"solution\""), 0u);
  EXPECT_EQ(count(svg, "<rect class=\"target\""), 8u);
}

TEST(RenderSvg, ThreeDimensionalUnsupported) {
  const sib::PolyhedralDynamic dyn({{Vector{{1, 0, 0}}, 1.0}});
  const sib::SibProblem p(dyn, {ConvexBody::point(Vector::Zero(3))}, ConvexBody::ball(Vector::Zero(3), 1.0));
  EXPECT_THROW(render_svg(p, nullptr), sib::UnsupportedError);
}

TEST(EmitSvg, WritesFile) {
  sib::Scenario s = sib::load_scenario(SIB_SCENARIO_DIR "/figure1.json");
  s.solver.max_iters = 10;
  const sib::SolveReport report = solve(s.problem, s.solver);
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "sib_render_test.svg";
  emit_svg(s.problem, report, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), render_svg(s.problem, &report));
  std::filesystem::remove(path);
}

}  // namespace
