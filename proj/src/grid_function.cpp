#include "scpoly/grid_function.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "scpoly/cutoffs.hpp"

namespace sc {

namespace {

void check_grid(double half_width, double spacing, int rows) {
  if (half_width <= 0.0 || spacing <= 0.0)
    throw std::invalid_argument("GridFunction: half_width and spacing must be positive");
  const double ratio = 2.0 * half_width / spacing;
  const int n = static_cast<int>(std::llround(ratio));
  if (std::abs(ratio - n) > 1e-9 || n % 2 != 0)
    throw std::invalid_argument("GridFunction: 2T/h must be an even integer");
  if (rows != n + 1)
    throw std::invalid_argument("GridFunction: value count must equal 2T/h + 1");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

GridFunction::GridFunction(double half_width, double spacing, Matrix values, Vector left_limit,
                           Vector right_limit)
    : half_width_(half_width),
      spacing_(spacing),
      values_(std::move(values)),
      left_limit_(std::move(left_limit)),
      right_limit_(std::move(right_limit)) {
  check_grid(half_width_, spacing_, static_cast<int>(values_.rows()));
  if (left_limit_.size() != values_.cols() || right_limit_.size() != values_.cols())
    throw std::invalid_argument("GridFunction: limit dimension mismatch");
  if (!all_finite()) throw std::invalid_argument("GridFunction: non-finite entries");
}

GridFunction GridFunction::zero(int dim, double half_width, double spacing) {
  const int n = static_cast<int>(std::llround(2.0 * half_width / spacing));
  return GridFunction(half_width, spacing, Matrix::Zero(n + 1, dim), Vector::Zero(dim),
                      Vector::Zero(dim));
}

GridFunction GridFunction::constant(const Vector& value, double half_width, double spacing) {
  const int n = static_cast<int>(std::llround(2.0 * half_width / spacing));
  Matrix vals(n + 1, value.size());
  vals.rowwise() = value.transpose();
  return GridFunction(half_width, spacing, std::move(vals), value, value);
}

GridFunction GridFunction::sample(double half_width, double spacing,
                                  const std::function<Vector(double)>& f, Vector left_limit,
                                  Vector right_limit) {
  const int n = static_cast<int>(std::llround(2.0 * half_width / spacing));
  const int dim = static_cast<int>(left_limit.size());
  Matrix vals(n + 1, dim);
  for (int i = 0; i <= n; ++i) vals.row(i) = f(-half_width + spacing * i).transpose();
  return GridFunction(half_width, spacing, std::move(vals), std::move(left_limit),
                      std::move(right_limit));
}

GridFunction GridFunction::sample_scalar(double half_width, double spacing,
                                         const std::function<double(double)>& f,
                                         double left_limit, double right_limit) {
  return sample(
      half_width, spacing,
      [&f](double t) {
        Vector v(1);
        v[0] = f(t);
        return v;
      },
      Vector::Constant(1, left_limit), Vector::Constant(1, right_limit));
}

int GridFunction::node_of(double t_value) const {
  int i = static_cast<int>(std::llround((t_value + half_width_) / spacing_));
  if (i < 0) i = 0;
  if (i >= size()) i = size() - 1;
  return i;
}

GridFunction GridFunction::with_values(Matrix values) const {
  return GridFunction(half_width_, spacing_, std::move(values), left_limit_, right_limit_);
}

GridFunction GridFunction::with_limits(Vector left, Vector right) const {
  return GridFunction(half_width_, spacing_, values_, std::move(left), std::move(right));
}

Matrix GridFunction::profile_samples() const {
  Matrix p(size(), dim());
  for (int i = 0; i < size(); ++i) p.row(i) = profile(t(i)).transpose();
  return p;
}

Vector GridFunction::profile(double t_value) const {
  // Erf step: analytic, so its spectrum dies at machine precision far below
  // the Nyquist frequency of every grid in use.
  const double step = 0.5 * (1.0 + std::erf(t_value));
  return left_limit_ + step * (right_limit_ - left_limit_);
}

Vector GridFunction::profile_derivative(double t_value) const {
  const double d = std::exp(-t_value * t_value) / std::sqrt(std::acos(-1.0));
  return d * (right_limit_ - left_limit_);
}

Matrix GridFunction::periodic_part() const {
  const int n = num_intervals();
  Matrix p(n, dim());
  for (int i = 0; i < n; ++i) p.row(i) = values_.row(i) - profile(t(i)).transpose();
  return p;
}

double GridFunction::tail_deviation() const {
  const double left = (values_.row(0).transpose() - left_limit_).norm();
  const double right = (values_.row(size() - 1).transpose() - right_limit_).norm();
  return std::max(left, right);
}

double GridFunction::content_radius(double floor_rel) const {
  double maxabs = 0.0;
  Vector dev(size());
  for (int i = 0; i < size(); ++i) {
    dev[i] = (values_.row(i).transpose() - profile(t(i))).cwiseAbs().maxCoeff();
    maxabs = std::max(maxabs, dev[i]);
  }
  if (maxabs == 0.0) return 0.0;
  double radius = 0.0;
  for (int i = 0; i < size(); ++i)
    if (dev[i] > floor_rel * maxabs) radius = std::max(radius, std::abs(t(i)));
  return radius;
}

GridFunction GridFunction::mask_beyond(double radius) const {
  Matrix out = values_;
  for (int i = 0; i < size(); ++i) {
    const double w = cutoff_beta(std::abs(t(i)) - (radius + 1.0));
    const Vector p = profile(t(i));
    out.row(i) = (p + w * (values_.row(i).transpose() - p)).transpose();
  }
  return with_values(std::move(out));
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return dim() == other.dim() && size() == other.size() &&
         std::abs(half_width_ - other.half_width_) < 1e-12 &&
         std::abs(spacing_ - other.spacing_) < 1e-12;
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  if (!same_grid(other)) throw std::invalid_argument("GridFunction: grid mismatch in +");
  return GridFunction(half_width_, spacing_, values_ + other.values_,
                      left_limit_ + other.left_limit_, right_limit_ + other.right_limit_);
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  if (!same_grid(other)) throw std::invalid_argument("GridFunction: grid mismatch in -");
  return GridFunction(half_width_, spacing_, values_ - other.values_,
                      left_limit_ - other.left_limit_, right_limit_ - other.right_limit_);
}

GridFunction GridFunction::operator*(double scalar) const {
  return GridFunction(half_width_, spacing_, values_ * scalar, left_limit_ * scalar,
                      right_limit_ * scalar);
}

bool GridFunction::all_finite() const {
  return values_.allFinite() && left_limit_.allFinite() && right_limit_.allFinite();
}

double GridFunction::sup_distance(const GridFunction& other) const {
  if (!same_grid(other)) throw std::invalid_argument("GridFunction: grid mismatch");
  return (values_ - other.values_).rowwise().norm().maxCoeff();
}

void GridFunction::write_csv(std::ostream& os) const {
  os << "t";
  for (int j = 0; j < dim(); ++j) os << ",x" << (j + 1);
  os << "\n";
  for (int i = 0; i < size(); ++i) {
    os << format_double(t(i));
    for (int j = 0; j < dim(); ++j) os << "," << format_double(values_(i, j));
    os << "\n";
  }
  os << "#left_limit=";
  for (int j = 0; j < dim(); ++j) os << (j ? "," : "") << format_double(left_limit_[j]);
  os << "\n#right_limit=";
  for (int j = 0; j < dim(); ++j) os << (j ? "," : "") << format_double(right_limit_[j]);
  os << "\n";
}

GridFunction GridFunction::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("GridFunction csv: empty stream");
  int dim = 0;
  for (char c : line)
    if (c == ',') ++dim;
  if (dim < 1) throw std::runtime_error("GridFunction csv: bad header");

  std::vector<double> ts;
  std::vector<Vector> rows;
  Vector left, right;
  bool got_left = false, got_right = false;
  auto parse_list = [dim](const std::string& text) {
    Vector v(dim);
    std::stringstream ss(text);
    std::string tok;
    for (int j = 0; j < dim; ++j) {
      if (!std::getline(ss, tok, ',')) throw std::runtime_error("GridFunction csv: short row");
      v[j] = std::stod(tok);
    }
    return v;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("#left_limit=", 0) == 0) {
      left = parse_list(line.substr(12));
      got_left = true;
    } else if (line.rfind("#right_limit=", 0) == 0) {
      right = parse_list(line.substr(13));
      got_right = true;
    } else {
      std::stringstream ss(line);
      std::string tok;
      std::getline(ss, tok, ',');
      ts.push_back(std::stod(tok));
      Vector v(dim);
      for (int j = 0; j < dim; ++j) {
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("GridFunction csv: short row");
        v[j] = std::stod(tok);
      }
      rows.push_back(v);
    }
  }
  if (!got_left || !got_right || ts.size() < 3)
    throw std::runtime_error("GridFunction csv: missing data or limits");
  const double spacing = ts[1] - ts[0];
  const double half_width = -ts[0];
  Matrix vals(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i) vals.row(i) = rows[i].transpose();
  return GridFunction(half_width, spacing, std::move(vals), std::move(left), std::move(right));
}

void GridFunction::save_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("GridFunction: cannot open " + path);
  write_csv(f);
}

GridFunction GridFunction::load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("GridFunction: cannot open " + path);
  return read_csv(f);
}

PathEvaluator::PathEvaluator(const GridFunction& g) : g_(&g) {
  const Matrix part = g.periodic_part();
  interp_.reserve(g.dim());
  for (int j = 0; j < g.dim(); ++j)
    interp_.emplace_back(part.col(j).eval(), -g.half_width(), g.spacing());
}

Vector PathEvaluator::value(double t) const {
  Vector v = g_->profile(t);
  for (int j = 0; j < g_->dim(); ++j) v[j] += interp_[j].value(t);
  return v;
}

Vector PathEvaluator::derivative(double t) const {
  Vector v = g_->profile_derivative(t);
  for (int j = 0; j < g_->dim(); ++j) v[j] += interp_[j].derivative(t);
  return v;
}

}  // namespace sc
