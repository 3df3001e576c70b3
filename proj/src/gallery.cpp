#include "gabor/gallery.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gabor/window_io.hpp"

namespace gabor {
namespace {

index_t parse_int(const std::string& text, const char* field) {
  index_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw ParameterError(field, "expected an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Cyclic convolution of boxes 1_{[0, w)} on Z_L.
rvec box_convolution(index_t L, const std::vector<index_t>& widths) {
  index_t support = 1;
  for (index_t w : widths) {
    if (w < 1) throw ParameterError("widths", "box widths must be positive");
    support += w - 1;
  }
  if (support > L)
    throw ParameterError("widths", "total support " + std::to_string(support) + " exceeds L=" + std::to_string(L));

  rvec acc = rvec::Zero(L);
  acc(0) = 1.0;
  for (index_t w : widths) {
    rvec next = rvec::Zero(L);
    for (index_t n = 0; n < L; ++n)
      for (index_t j = 0; j < w; ++j) next(mod(n + j, L)) += acc(n);
    acc = std::move(next);
  }
  // center the support around 0 mod L
  const index_t shift = (support - 1) / 2;
  rvec centered(L);
  for (index_t n = 0; n < L; ++n) centered(mod(n - shift, L)) = acc(n);
  return centered;
}

double gaussian_sum(index_t m, index_t L) {
  const double len = static_cast<double>(L);
  auto term = [&](index_t j) {
    const double u = static_cast<double>(m) + static_cast<double>(j) * len;
    return std::exp(-std::numbers::pi * u * u / len);
  };
  double sum = term(0);
  for (index_t j = 1;; ++j) {
    const double plus = term(j);
    const double minus = term(-j);
    sum += plus + minus;
    if (plus < 1e-17 && minus < 1e-17) break;
  }
  return sum;
}

}  // namespace

WindowRecipe WindowRecipe::parse(const std::string& text) {
  WindowRecipe r;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "delta" && rest.empty()) {
    r.kind = WindowKind::delta;
  } else if ((head == "gaussian" || head == "periodized_gaussian") && rest.empty()) {
    r.kind = WindowKind::periodized_gaussian;
  } else if (head == "bspline") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw ParameterError("window", "expected bspline:ORDER:WIDTH, got '" + text + "'");
    r.kind = WindowKind::bspline;
    r.order = parse_int(parts[0], "order");
    if (r.order < 1) throw ParameterError("order", "bspline order must be at least 1");
    r.widths = {parse_int(parts[1], "widths")};
  } else if (head == "conv" || head == "convolution_product") {
    r.kind = WindowKind::convolution_product;
    for (const auto& p : split(rest, ',')) r.widths.push_back(parse_int(p, "widths"));
    if (r.widths.empty()) throw ParameterError("widths", "convolution product needs at least one width");
  } else if (head == "random") {
    r.kind = WindowKind::random;
    r.seed = rest.empty() ? 0 : static_cast<std::uint64_t>(parse_int(rest, "seed"));
  } else if (head == "file" && !rest.empty()) {
    r.kind = WindowKind::file;
    r.path = rest;
  } else {
    throw ParameterError("window", "unknown window recipe '" + text + "'");
  }
  return r;
}

std::string WindowRecipe::to_string() const {
  switch (kind) {
    case WindowKind::periodized_gaussian:
      return "gaussian";
    case WindowKind::delta:
      return "delta";
    case WindowKind::bspline:
      return "bspline:" + std::to_string(order) + ":" + std::to_string(widths.at(0));
    case WindowKind::convolution_product: {
      std::string s = "conv:";
      for (std::size_t i = 0; i < widths.size(); ++i) s += (i ? "," : "") + std::to_string(widths[i]);
      return s;
    }
    case WindowKind::random:
      return "random:" + std::to_string(seed);
    case WindowKind::file:
      return "file:" + path;
  }
  return {};
}

Window periodized_gaussian(index_t length) {
  [[maybe_unused]] const FiniteModel model(length);
  cvec g(length);
  for (index_t n = 0; n < length; ++n) {
    const index_t centered = n <= length / 2 ? n : length - n;
    g[n] = gaussian_sum(centered, length);
  }
  return Window::from_samples(std::move(g), "periodized-gaussian");
}

Window make_window(const WindowRecipe& recipe, const FiniteModel& model) {
  const index_t L = model.length();
  switch (recipe.kind) {
    case WindowKind::periodized_gaussian:
      return periodized_gaussian(L);
    case WindowKind::delta: {
      cvec d = cvec::Zero(L);
      d[0] = 1.0;
      return Window::from_samples(std::move(d), "delta");
    }
    case WindowKind::bspline: {
      if (recipe.widths.size() != 1) throw ParameterError("widths", "bspline takes exactly one width");
      const std::vector<index_t> widths(static_cast<std::size_t>(recipe.order), recipe.widths[0]);
      return Window::from_samples(box_convolution(L, widths).cast<complex_t>(),
                                  "bspline-" + std::to_string(recipe.order) + "-w" + std::to_string(recipe.widths[0]));
    }
    case WindowKind::convolution_product: {
      std::string label = "convolution-product";
      for (index_t w : recipe.widths) label += "-" + std::to_string(w);
      return Window::from_samples(box_convolution(L, recipe.widths).cast<complex_t>(), label);
    }
    case WindowKind::random: {
      std::mt19937_64 rng(recipe.seed);
      std::normal_distribution<double> normal;
      cvec r(L);
      for (index_t n = 0; n < L; ++n) {
        const double re = normal(rng);
        r[n] = complex_t(re, normal(rng));
      }
      return Window::from_samples(std::move(r), "random-" + std::to_string(recipe.seed));
    }
    case WindowKind::file: {
      cvec samples = read_window_file(recipe.path);
      if (samples.size() != L)
        throw ShapeError("window file '" + recipe.path + "' has " + std::to_string(samples.size()) +
                         " samples, expected L=" + std::to_string(L));
      return Window::from_samples(std::move(samples), "file:" + recipe.path);
    }
  }
  throw ParameterError("window", "unhandled recipe");
}

PartitionOfUnity check_partition_of_unity(const cvec& g, index_t period, double tolerance) {
  const index_t L = g.size();
  if (period < 1 || L % period != 0)
    throw ParameterError("period", "period " + std::to_string(period) + " does not divide L=" + std::to_string(L));
  cvec sums = cvec::Zero(period);
  for (index_t n = 0; n < period; ++n)
    for (index_t k = 0; k < L / period; ++k) sums[n] += g[mod(n - period * k, L)];

  PartitionOfUnity p;
  p.value = sums.mean();
  p.deviation = (sums.array() - p.value).abs().maxCoeff();
  p.holds = p.deviation <= tolerance * std::max(1.0, std::abs(p.value)) && std::abs(p.value) > tolerance;
  return p;
}

LatticeSequence alternating_sequence(const SeparableLattice& lattice) {
  auto c = LatticeSequence::zeros(lattice);
  for (index_t k = 0; k < lattice.time_count(); ++k)
    for (index_t l = 0; l < lattice.freq_count(); ++l) c.values(k, l) = (k + l) % 2 == 0 ? 1.0 : -1.0;
  return c;
}

AlternatingProbe alternating_kernel_probe(index_t length, const cvec& g, double tol_scale) {
  const auto side = static_cast<index_t>(std::llround(std::sqrt(static_cast<double>(length))));
  if (side < 2 || side * side != length)
    throw ParameterError("L", "alternating probe needs L = s^2 with s >= 2, got " + std::to_string(length));
  const SeparableLattice critical(length, side, side);
  const auto adj = adjoint_lattice(critical);
  const auto c = alternating_sequence(adj);

  AlternatingProbe p;
  p.length = length;
  p.side = side;
  p.ratio = synthesis_map(g, c).norm() / c.values.norm();
  const rvec sv = Eigen::BDCSVD<cmat>(synthesis_matrix(g, adj)).singularValues();
  p.sigma_max = sv(0);
  p.sigma_min = sv(sv.size() - 1);
  p.kernel_dimension = static_cast<index_t>(kernel_basis(g, adj, tol_scale).size());
  return p;
}

AlternatingProbe gaussian_alternating_kernel_probe(index_t length, double tol_scale) {
  const auto side = static_cast<index_t>(std::llround(std::sqrt(static_cast<double>(length))));
  if (length < 4 || side * side != length)
    throw ParameterError("L", "alternating probe needs L = s^2 with s >= 2, got " + std::to_string(length));
  return alternating_kernel_probe(length, periodized_gaussian(length).samples(), tol_scale);
}

PartitionKernel partition_of_unity_kernel(const cvec& g, index_t period, index_t n, index_t alpha) {
  const index_t L = g.size();
  if (period < 1 || L % period != 0)
    throw ParameterError("period", "period " + std::to_string(period) + " does not divide L=" + std::to_string(L));
  if (n < 2) throw ParameterError("N", "N must be at least 2");
  if (period % n != 0)
    throw ParameterError("N", "N=" + std::to_string(n) + " must divide the period " + std::to_string(period));
  if (alpha < 1 || L % alpha != 0)
    throw ParameterError("alpha", "time step " + std::to_string(alpha) + " does not divide L=" + std::to_string(L));
  const auto pou = check_partition_of_unity(g, period);
  if (!pou.holds)
    throw ParameterError("window", "no partition of unity with period " + std::to_string(period) +
                                       " (deviation " + std::to_string(pou.deviation) + ")");

  const SeparableLattice lattice(L, alpha, n * L / period);
  const auto adj = adjoint_lattice(lattice);
  auto c = TwistedSequence::zeros(adj);
  for (index_t k = 0; k < adj.time_count(); ++k) {
    const index_t j = k % n;
    if (j == 0) c.values(k, 0) = 1.0;
    if (j == 1) c.values(k, 0) = -1.0;
  }
  const double residual = synthesis_map(g, c).norm() / c.values.norm();
  return {lattice, std::move(c), pou.value, residual};
}

}  // namespace gabor
