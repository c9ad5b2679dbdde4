#include <fstream>
#include <iomanip>
#include <sstream>

#include "sib/scenario.hpp"

namespace sib {

namespace {

using Point2 = Eigen::Vector2d;

// World coordinates with y flipped so the picture reads like a plot.
std::string xy(double x, double y) {
  std::ostringstream out;
  out << std::setprecision(10) << x << ',' << -y;
  return out.str();
}

std::vector<Point2> clip(const std::vector<Point2>& polygon, const Halfspace& h) {
  std::vector<Point2> out;
  const Point2 a = h.normal.head<2>();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2& p = polygon[i];
    const Point2& q = polygon[(i + 1) % polygon.size()];
    const double fp = a.dot(p) - h.offset;
    const double fq = a.dot(q) - h.offset;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
  }
  return out;
}

class SvgWriter {
 public:
  SvgWriter(const BoundingBox& view) : view_(view) {
    const double scale = (view.upper - view.lower).maxCoeff();
    stroke_ = scale / 400.0;
  }

  void body(const ConvexBody& b, const char* cls) {
    switch (b.kind()) {
      case BodyKind::kPoint: {
        const Vector& p = b.as<Point>().p;
        out_ << "  <circle class=\"" << cls << " point\" cx=\"" << p[0] << "\" cy=\"" << -p[1]
             << "\" r=\"" << 2.5 * stroke_ << "\"/>\n";
        break;
      }
      case BodyKind::kBox: {
        const Box& box = b.as<Box>();
        out_ << "  <rect class=\"" << cls << "\" x=\"" << box.lower[0] << "\" y=\"" << -box.upper[1]
             << "\" width=\"" << box.upper[0] - box.lower[0] << "\" height=\"" << box.upper[1] - box.lower[1]
             << "\"/>\n";
        break;
      }
      case BodyKind::kBall: {
        const Ball& ball = b.as<Ball>();
        out_ << "  <circle class=\"" << cls << "\" cx=\"" << ball.center[0] << "\" cy=\"" << -ball.center[1]
             << "\" r=\"" << ball.radius << "\"/>\n";
        break;
      }
      case BodyKind::kHalfspaces: {
        std::vector<Point2> polygon{{view_.lower[0], view_.lower[1]},
                                    {view_.upper[0], view_.lower[1]},
                                    {view_.upper[0], view_.upper[1]},
                                    {view_.lower[0], view_.upper[1]}};
        for (const Halfspace& h : b.as<HalfspaceIntersection>().faces) polygon = clip(polygon, h);
        out_ << "  <polygon class=\"" << cls << "\" points=\"";
        for (std::size_t i = 0; i < polygon.size(); ++i) out_ << (i ? " " : "") << xy(polygon[i][0], polygon[i][1]);
        out_ << "\"/>\n";
        break;
      }
    }
  }

  void polyline(const std::vector<TraceRow>& rows) {
    out_ << "  <polyline class=\"iterates\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) out_ << (i ? " " : "") << xy(rows[i].x[0], rows[i].x[1]);
    out_ << "\"/>\n";
  }

  void marker(const Vector& x) {
    const double s = 4.0 * stroke_;
    out_ << "  <path class=\"solution\" d=\"M" << xy(x[0] - s, x[1] - s) << " L" << xy(x[0] + s, x[1] + s)
         << " M" << xy(x[0] - s, x[1] + s) << " L" << xy(x[0] + s, x[1] - s) << "\"/>\n";
  }

  std::string finish() const {
    const Vector extent = view_.upper - view_.lower;
    std::ostringstream doc;
    doc << std::setprecision(10);
    doc << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << view_.lower[0] << ' ' << -view_.upper[1]
        << ' ' << extent[0] << ' ' << extent[1] << "\" width=\"800\" height=\""
        << static_cast<int>(800.0 * extent[1] / extent[0]) << "\">\n"
        << "  <style>\n"
        << "    .constraint { fill: #dbe9f6; stroke: #1f5a94; stroke-width: " << stroke_ << "; }\n"
        << "    .target { fill: #f4d8c8; stroke: #a2401a; stroke-width: " << stroke_ << "; }\n"
        << "    .iterates { fill: none; stroke: #555; stroke-width: " << 0.5 * stroke_ << "; }\n"
        << "    .solution { fill: none; stroke: #000; stroke-width: " << 1.5 * stroke_ << "; }\n"
        << "  </style>\n"
        << out_.str() << "</svg>\n";
    return doc.str();
  }

  std::ostringstream& stream() { return out_; }

 private:
  BoundingBox view_;
  double stroke_ = 1.0;
  std::ostringstream out_;
};

}  // namespace

std::string render_svg(const SibProblem& problem, const SolveReport* report) {
  if (problem.dimension() != 2) throw UnsupportedError("svg rendering needs a 2D problem");

  BoundingBox bounds = bounding_box(problem.targets.front());
  const auto absorb_point = [&](const Vector& p) {
    bounds.lower = bounds.lower.cwiseMin(p);
    bounds.upper = bounds.upper.cwiseMax(p);
  };
  const auto absorb = [&](const ConvexBody& body) {
    if (!body.is_bounded()) return;
    const BoundingBox b = bounding_box(body);
    absorb_point(b.lower);
    absorb_point(b.upper);
  };
  for (const ConvexBody& t : problem.targets) absorb(t);
  absorb(problem.constraint);
  if (report != nullptr) {
    if (report->x_best.size() == 2) absorb_point(report->x_best);
    for (const TraceRow& row : report->trace) absorb_point(row.x);
  }
  const double span = std::max((bounds.upper - bounds.lower).maxCoeff(), 1.0);
  const Vector margin = Vector::Constant(2, 0.1 * span);
  SvgWriter svg({bounds.lower - margin, bounds.upper + margin});
  svg.stream() << std::setprecision(10);

  svg.body(problem.constraint, "constraint");
  for (const ConvexBody& t : problem.targets) svg.body(t, "target");
  if (report != nullptr) {
    if (report->trace.size() >= 2) svg.polyline(report->trace);
    if (report->x_best.size() == 2) svg.marker(report->x_best);
  }
  return svg.finish();
}

void emit_svg(const SibProblem& problem, const SolveReport& report, const std::filesystem::path& path) {
  const std::string text = render_svg(problem, &report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write svg file " + path.string());
  out << text;
}

}  // namespace sib
