#include "indmatch/plot.hpp"

#include "indmatch/error.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace indmatch {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kLeft = 90, kWidth = 520, kBarGap = 14, kRowGap = 36, kTop = 30;

}  // namespace

std::string plot_svg(const std::vector<PlotRow>& rows, const std::vector<Matching>& links,
                     const std::optional<Rational>& horizon) {
  if (links.size() > rows.size() - std::min<std::size_t>(rows.size(), 1)) {
    throw DomainError("more matchings than gaps between rows");
  }
  std::set<Rational> finite;
  for (const auto& row : rows) {
    for (const auto& bar : row.barcode.elements()) {
      for (const auto* e : {&bar.interval.birth(), &bar.interval.death()}) {
        if (e->is_finite()) finite.insert(e->value());
      }
    }
  }
  Rational lo = finite.empty() ? Rational(0) : *finite.begin();
  Rational hi = finite.empty() ? Rational(1) : *finite.rbegin();
  Rational right = horizon ? *horizon : hi + 1;
  Rational left = horizon ? -*horizon : lo - 1;
  if (!(left < right)) right = left + 1;
  const double x0 = to_double(left), x1 = to_double(right);
  auto x_of = [&](const DecoratedEndpoint& e) {
    double v = e.kind() == DecoratedEndpoint::Kind::neg_infinity   ? x0
               : e.kind() == DecoratedEndpoint::Kind::pos_infinity ? x1
                                                                  : std::clamp(to_double(e.value()), x0, x1);
    return kLeft + (v - x0) / (x1 - x0) * kWidth;
  };

  // which bars take part in some link
  std::vector<std::set<BarRef>> linked(rows.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    for (const auto& [s, t] : links[k].pairs()) {
      linked[k].insert(s);
      linked[k + 1].insert(t);
    }
  }

  std::ostringstream body;
  std::vector<std::map<BarRef, double>> y_of(rows.size());
  double y = kTop;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    body << "<text x=\"8\" y=\"" << num(y + 4) << "\" font-size=\"12\">" << escape(rows[r].label) << "</text>\n";
    for (const auto& bar : rows[r].barcode.elements()) {
      const double a = x_of(bar.interval.birth());
      const double b = x_of(bar.interval.death());
      const bool active = linked[r].count(bar) > 0 || links.empty();
      const char* color = active ? "#000000" : "#aaaaaa";
      body << "<line x1=\"" << num(a) << "\" y1=\"" << num(y) << "\" x2=\"" << num(b) << "\" y2=\"" << num(y)
           << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
      for (const auto* e : {&bar.interval.birth(), &bar.interval.death()}) {
        if (!e->is_finite()) continue;
        const bool closed = (e == &bar.interval.birth()) == (e->decoration() == Decoration::minus);
        body << "<circle cx=\"" << num(x_of(*e)) << "\" cy=\"" << num(y) << "\" r=\"3\" stroke=\"" << color
             << "\" fill=\"" << (closed ? color : "#ffffff") << "\"/>\n";
      }
      y_of[r][bar] = y;
      y += kBarGap;
    }
    y += kRowGap;
  }
  for (std::size_t k = 0; k < links.size(); ++k) {
    for (const auto& [s, t] : links[k].pairs()) {
      const auto ys = y_of[k].find(s);
      const auto yt = y_of[k + 1].find(t);
      if (ys == y_of[k].end() || yt == y_of[k + 1].end()) throw DomainError("matching does not fit the plotted rows");
      const double xs = (x_of(s.interval.birth()) + x_of(s.interval.death())) / 2;
      const double xt = (x_of(t.interval.birth()) + x_of(t.interval.death())) / 2;
      body << "<line x1=\"" << num(xs) << "\" y1=\"" << num(ys->second) << "\" x2=\"" << num(xt) << "\" y2=\""
           << num(yt->second) << "\" stroke=\"#1f5fbf\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }
  }
  // axis with ticks at the finite endpoints, ends labelled with the clip values
  const double axis_y = y;
  if (!rows.empty()) {
    body << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(kLeft + kWidth)
         << "\" y2=\"" << num(axis_y) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    for (const auto& t : finite) {
      const double x = x_of(DecoratedEndpoint::minus(t));
      body << "<line x1=\"" << num(x) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(x) << "\" y2=\""
           << num(axis_y + 5) << "\" stroke=\"#000000\"/>\n"
           << "<text x=\"" << num(x) << "\" y=\"" << num(axis_y + 18) << "\" font-size=\"10\" text-anchor=\"middle\">"
           << escape(format_rational(t)) << "</text>\n";
    }
    for (const auto& [t, anchor] : {std::pair{left, "start"}, std::pair{right, "end"}}) {
      if (finite.count(t)) continue;
      body << "<text x=\"" << num(t == left ? kLeft : kLeft + kWidth) << "\" y=\"" << num(axis_y + 18)
           << "\" font-size=\"10\" fill=\"#777777\" text-anchor=\"" << anchor << "\">" << escape(format_rational(t))
           << "</text>\n";
    }
  }
  const double height = axis_y + 30;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kLeft + kWidth + 30) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(kLeft + kWidth + 30) << ' ' << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace indmatch
