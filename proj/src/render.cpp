#include "genss/render.hpp"

#include <vector>

#include <fmt/format.h>

namespace genss {

namespace {

struct Piece {
  bool negative = false;
  std::string body;
};

const char* times(Format f) { return f == Format::Text ? "*" : "\\,"; }

std::string join_pieces(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (i == 0) {
      out += p.negative ? "-" : "";
    } else {
      out += p.negative ? " - " : " + ";
    }
    out += p.body;
  }
  return out;
}

// Splits a number into sign and magnitude text when it is real or purely imaginary.
Piece number_piece(cplx c, Format f) {
  const double re = c.real() + 0.0;
  const double im = c.imag() + 0.0;
  if (im == 0.0) return {re < 0.0, fmt::format("{}", std::abs(re))};
  if (re == 0.0) return {im < 0.0, std::abs(im) == 1.0 ? "i" : fmt::format("{}i", std::abs(im))};
  return {false, render_number(c, f)};
}

std::string with_exponent(const std::string& base, int e, Format f) {
  if (e == 1) return base;
  if (f == Format::Latex) return fmt::format("{}^{{{}}}", base, e);
  return e > 0 ? fmt::format("{}^{}", base, e) : fmt::format("{}^({})", base, e);
}

std::string atom_text(AtomId id, Format f) {
  const AtomInfo a = atom_info(id);
  const bool tex = f == Format::Latex;
  switch (a.kind) {
    case AtomKind::S:
      return "s";
    case AtomKind::DeltaEven:
      if (a.index == 0) return tex ? "\\delta(0)" : "delta(0)";
      return tex ? fmt::format("\\delta^{{({})}}(0)", 2 * a.index) : fmt::format("delta^({})(0)", 2 * a.index);
    case AtomKind::KernelOddCos:
    case AtomKind::KernelOddSin: {
      const bool sine = a.kind == AtomKind::KernelOddSin;
      if (tex) return fmt::format("\\kappa^{{{}}}_{{{}}}({},{})", sine ? "s" : "c", a.index, a.rate.real(), a.rate.imag());
      return fmt::format("{}{{{};{};{}}}", sine ? "ks" : "kc", a.index, a.rate.real(), a.rate.imag());
    }
    case AtomKind::Lambda:
      return tex ? "\\lambda" : "lambda";
    case AtomKind::RodOmega:
      return tex ? "\\omega" : "omega_rod";
    case AtomKind::RodSine:
      return tex ? "\\mathcal{S}" : "S_rod";
    case AtomKind::RodCosine:
      return tex ? "\\mathcal{C}" : "C_rod";
  }
  return "?";
}

std::string monomial_text(const Monomial& m, Format f) {
  std::string out;
  for (const auto& [id, e] : m.factors()) {
    if (!out.empty()) out += times(f);
    const std::string base = atom_text(id, f);
    // delta^(2k)(0) needs grouping before a further power in LaTeX
    out += with_exponent(f == Format::Latex && e != 1 && base.find('^') != std::string::npos ? "(" + base + ")" : base,
                         e, f);
  }
  return out;
}

Piece term_piece(const Monomial& m, cplx c, Format f) {
  if (m.is_one()) return number_piece(c, f);
  const std::string ms = monomial_text(m, f);
  Piece p = number_piece(c, f);
  if (p.body == "1") return {p.negative, ms};
  return {p.negative, p.body + times(f) + ms};
}

std::vector<Piece> scalar_pieces(const GenScalar& x, Format f) {
  std::vector<Piece> out;
  // constant first, then monomials in normal-form order
  for (const auto& [m, c] : x.terms()) out.push_back(term_piece(m, c, f));
  return out;
}

// Renders a scalar for use as a multiplicative factor.
Piece factor_piece(const GenScalar& x, Format f) {
  if (x.terms().size() == 1) {
    const auto& [m, c] = *x.terms().begin();
    return term_piece(m, c, f);
  }
  const std::string inner = join_pieces(scalar_pieces(x, f));
  return {false, f == Format::Latex ? "\\left(" + inner + "\\right)" : "(" + inner + ")"};
}

std::string rate_prefix(double r, Format f) {
  if (r == 1.0) return "";
  if (r == -1.0) return "-";
  return render_number(r, f);
}

std::string delta_text(int n, Format f) {
  if (f == Format::Latex) {
    if (n <= 2) return "\\delta" + std::string(n, '\'') + "(t)";
    return fmt::format("\\delta^{{({})}}(t)", n);
  }
  if (n <= 2) return "delta" + std::string(n, '\'') + "(t)";
  return fmt::format("delta^({})(t)", n);
}

// Body of H(t)^[cut] t^m e^{rate t}, or with a trig factor when trig is "cos"/"sin".
std::string function_text(const Kernel& k, cplx rate, const char* trig, double omega, Format f) {
  const bool tex = f == Format::Latex;
  std::vector<std::string> parts;
  if (k.kind == Kernel::Kind::Cut) parts.emplace_back("H(t)");
  if (k.order == 1) parts.emplace_back("t");
  if (k.order > 1) parts.push_back(tex ? fmt::format("t^{{{}}}", k.order) : fmt::format("t^{}", k.order));
  if (rate != cplx(0.0)) {
    std::string r;
    if (rate.imag() == 0.0) {
      r = rate_prefix(rate.real(), f);
    } else if (rate.real() == 0.0) {
      r = "(" + render_number(rate, f) + ")";
    } else {
      r = render_number(rate, f);
    }
    parts.push_back(tex ? fmt::format("e^{{{}t}}", r) : fmt::format("exp({}t)", r));
  }
  if (trig != nullptr) {
    const std::string w = omega == 1.0 ? "" : render_number(omega, f);
    parts.push_back(tex ? fmt::format("\\{}({}t)", trig, w) : fmt::format("{}({}t)", trig, w));
  }
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += times(f) + parts[i];
  return out;
}

Piece kernel_term(const GenScalar& c, const std::string& body, Format f) {
  Piece p = factor_piece(c, f);
  if (body == "1") return p;
  if (p.body == "1") return {p.negative, body};
  return {p.negative, p.body + times(f) + body};
}

}  // namespace

std::string render_number(cplx c, Format f) {
  (void)f;
  const double re = c.real() + 0.0;
  const double im = c.imag() + 0.0;
  if (im == 0.0) return fmt::format("{}", re);
  if (re == 0.0) return fmt::format("{}i", im);
  return fmt::format("({}{}{}i)", re, im < 0.0 ? "-" : "+", std::abs(im));
}

std::string render(const GenScalar& x, Format f) { return join_pieces(scalar_pieces(x, f)); }

std::string render(const Dist& d, Format f) {
  std::vector<Piece> pieces;
  for (const auto& [k, c] : d.terms()) {
    if (k.kind == Kernel::Kind::Delta) {
      pieces.push_back(kernel_term(c, delta_text(k.order, f), f));
      continue;
    }
    const cplx rate = k.rate;
    if (rate.imag() != 0.0) {
      Kernel partner = k;
      partner.rate = std::conj(rate);
      const auto it = d.terms().find(partner);
      if (it != d.terms().end()) {
        if (rate.imag() < 0.0) continue;  // emitted with its partner
        const GenScalar& cm = it->second;
        const GenScalar a = c + cm;
        const GenScalar b = (c - cm) * cplx(0.0, 1.0);
        const double omega = rate.imag();
        if (!a.is_zero()) pieces.push_back(kernel_term(a, function_text(k, rate.real(), "cos", omega, f), f));
        if (!b.is_zero()) pieces.push_back(kernel_term(b, function_text(k, rate.real(), "sin", omega, f), f));
        continue;
      }
    }
    pieces.push_back(kernel_term(c, function_text(k, rate, nullptr, 0.0, f), f));
  }
  return join_pieces(pieces);
}

}  // namespace genss
