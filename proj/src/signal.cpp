#include "oqh/signal.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace oqh {

Signal::Signal(int64_t offset, Eigen::ArrayXcd values)
    : offset_(offset), values_(std::move(values)) {
  trim();
}

void Signal::trim() {
  Eigen::Index n = values_.size();
  Eigen::Index lo = 0, hi = n;
  while (lo < hi && values_[lo] == cplx(0.0)) ++lo;
  while (hi > lo && values_[hi - 1] == cplx(0.0)) --hi;
  if (lo == hi) {
    offset_ = 0;
    values_.resize(0);
    return;
  }
  if (lo > 0 || hi < n) {
    Eigen::ArrayXcd v = values_.segment(lo, hi - lo).eval();
    values_ = std::move(v);
    offset_ += lo;
  }
}

Signal Signal::delta(int64_t n, cplx value) {
  Eigen::ArrayXcd v(1);
  v[0] = value;
  return Signal(n, std::move(v));
}

Signal Signal::indicator(int64_t a, int64_t b) {
  DiscreteInterval I(a, b);
  return Signal(a, Eigen::ArrayXcd::Ones(I.length()));
}

std::optional<DiscreteInterval> Signal::support_hull() const {
  if (empty()) return std::nullopt;
  return DiscreteInterval(support_min(), support_max());
}

Signal Signal::conjugate() const {
  Signal out;
  out.offset_ = offset_;
  out.values_ = values_.conjugate();
  return out;
}

Signal& Signal::operator*=(cplx c) {
  values_ *= c;
  trim();
  return *this;
}

Signal operator+(const Signal& f, const Signal& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  int64_t lo = std::min(f.support_min(), g.support_min());
  int64_t hi = std::max(f.support_max(), g.support_max());
  Eigen::ArrayXcd v = Eigen::ArrayXcd::Zero(hi - lo + 1);
  v.segment(f.support_min() - lo, f.values_.size()) += f.values_;
  v.segment(g.support_min() - lo, g.values_.size()) += g.values_;
  return Signal(lo, std::move(v));
}

Signal operator-(const Signal& f, const Signal& g) {
  return f + (cplx(-1.0) * g);
}

double Signal::norm2() const { return std::sqrt(values_.abs2().sum()); }

double Signal::sup_abs() const {
  return values_.size() == 0 ? 0.0 : values_.abs().maxCoeff();
}

cplx inner_product(const Signal& f, const Signal& g) {
  if (f.empty() || g.empty()) return 0.0;
  int64_t lo = std::max(f.support_min(), g.support_min());
  int64_t hi = std::min(f.support_max(), g.support_max());
  cplx acc = 0.0;
  for (int64_t n = lo; n <= hi; ++n) acc += f(n) * std::conj(g(n));
  return acc;
}

double lr_average(const Signal& f, const DiscreteInterval& I, double r) {
  if (r < 1.0) throw ParameterError("lr_average: r must be >= 1");
  double acc = 0.0;
  int64_t lo = std::max(I.a, f.support_min());
  int64_t hi = std::min(I.b, f.support_max());
  for (int64_t x = lo; x <= hi; ++x) acc += std::pow(std::abs(f(x)), r);
  return std::pow(acc / static_cast<double>(I.length()), 1.0 / r);
}

std::string Signal::to_json() const {
  nlohmann::json j;
  j["offset"] = offset_;
  std::vector<double> re, im;
  re.reserve(values_.size());
  im.reserve(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    re.push_back(values_[k].real());
    im.push_back(values_[k].imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

Signal Signal::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size())
    throw StructuralError("Signal::from_json: re/im length mismatch");
  Eigen::ArrayXcd v(re.size());
  for (size_t k = 0; k < re.size(); ++k) v[k] = cplx(re[k], im[k]);
  return Signal(j.at("offset").get<int64_t>(), std::move(v));
}

}  // namespace oqh
