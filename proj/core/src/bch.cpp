#include "xbarchan/bch.hpp"

#include <set>
#include <stdexcept>

namespace xbar {

namespace {

int field_degree_for(int n) {
  for (int m = 2; m <= 16; ++m) {
    if ((1 << m) - 1 >= n) return m;
  }
  throw std::invalid_argument("BchCode: block length needs m_field > 16");
}

Gf2m make_field(int n) { return Gf2m(field_degree_for(n)); }

}  // namespace

BchCode::BchCode(int n, int t) : field_(make_field(n)) {
  if (n < 3) throw std::invalid_argument("BchCode: n too small");
  if (t < 1) throw std::invalid_argument("BchCode: t must be >= 1");
  if (n < 2 * t + 1) {
    throw std::invalid_argument("BchCode: n < 2t+1 is unachievable");
  }
  // generator = product of the distinct minimal polynomials of
  // alpha^1 .. alpha^{2t}
  std::set<int> seen_cosets;
  generator_ = Gf2Poly{1};
  for (int e = 1; e <= 2 * t; ++e) {
    int rep = e % field_.order();
    // canonical coset representative = smallest member
    int s = rep, smallest = rep;
    do {
      s = (2 * s) % field_.order();
      smallest = std::min(smallest, s);
    } while (s != rep);
    if (!seen_cosets.insert(smallest).second) continue;
    generator_ = gf2_mul(generator_, minimal_polynomial(field_, e));
  }
  const int parity = degree(generator_);
  if (parity >= n) {
    throw std::invalid_argument(
        "BchCode: generator degree leaves no data bits at this (n, t)");
  }
  spec_ = CodeSpec{n, n - parity, t, field_.m()};
}

Codeword BchCode::encode(std::span<const uint8_t> data) const {
  if (static_cast<int>(data.size()) != spec_.k) {
    throw std::invalid_argument("BchCode::encode: data length != k");
  }
  const int n = spec_.n;
  const int parity = n - spec_.k;
  // message poly shifted up by x^{n-k}: coefficient of x^{n-1-b} is
  // data[b]
  Gf2Poly shifted(n, 0);
  for (int b = 0; b < spec_.k; ++b) shifted[n - 1 - b] = data[b] & 1;
  const Gf2Poly rem = gf2_mod(shifted, generator_);
  Codeword cw;
  cw.bits.assign(n, 0);
  for (int b = 0; b < spec_.k; ++b) cw.bits[b] = data[b] & 1;
  for (int tail = 0; tail < parity; ++tail) {
    const int coeff_idx = parity - 1 - tail;
    cw.bits[spec_.k + tail] =
        coeff_idx < static_cast<int>(rem.size()) ? rem[coeff_idx] : 0;
  }
  return cw;
}

DecodeResult BchCode::decode(std::span<const uint8_t> received) const {
  const int n = spec_.n;
  if (static_cast<int>(received.size()) != n) {
    throw std::invalid_argument("BchCode::decode: word length != n");
  }
  const int t = spec_.t;
  DecodeResult out;
  out.word.assign(received.begin(), received.end());

  // syndromes S_1..S_2t; bit b carries the coefficient of x^{n-1-b}
  std::vector<uint32_t> synd(2 * t + 1, 0);
  bool all_zero = true;
  for (int j = 1; j <= 2 * t; ++j) {
    uint32_t s = 0;
    for (int b = 0; b < n; ++b) {
      if (out.word[b]) {
        s ^= field_.alpha_pow(static_cast<long long>(j) * (n - 1 - b));
      }
    }
    synd[j] = s;
    if (s) all_zero = false;
  }
  if (all_zero) {
    out.status = DecodeStatus::corrected;
    out.corrected = 0;
    return out;
  }

  // Berlekamp-Massey for the error locator sigma(x)
  std::vector<uint32_t> sigma{1}, prev{1};
  int L = 0, shift = 1;
  uint32_t prev_disc = 1;
  for (int i = 0; i < 2 * t; ++i) {
    uint32_t disc = synd[i + 1];
    for (int j = 1; j <= L && j < static_cast<int>(sigma.size()); ++j) {
      if (i + 1 - j >= 1) disc ^= field_.mul(sigma[j], synd[i + 1 - j]);
    }
    if (disc == 0) {
      ++shift;
      continue;
    }
    std::vector<uint32_t> next = sigma;
    const uint32_t scale = field_.mul(disc, field_.inv(prev_disc));
    if (next.size() < prev.size() + shift) next.resize(prev.size() + shift, 0);
    for (size_t j = 0; j < prev.size(); ++j) {
      next[j + shift] ^= field_.mul(scale, prev[j]);
    }
    if (2 * L <= i) {
      prev = sigma;
      prev_disc = disc;
      L = i + 1 - L;
      shift = 1;
    } else {
      ++shift;
    }
    sigma = std::move(next);
  }
  while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
  const int deg_sigma = static_cast<int>(sigma.size()) - 1;
  if (L > t || deg_sigma != L) {
    out.status = DecodeStatus::failure;
    return out;
  }

  // Chien search restricted to in-range positions (shortened prefix
  // cannot carry errors)
  std::vector<int> error_bits;
  for (int b = 0; b < n && static_cast<int>(error_bits.size()) <= L; ++b) {
    const int coeff_idx = n - 1 - b;
    uint32_t v = 0;
    for (size_t j = 0; j < sigma.size(); ++j) {
      if (sigma[j]) {
        v ^= field_.mul(sigma[j],
                        field_.alpha_pow(-static_cast<long long>(coeff_idx) *
                                         static_cast<long long>(j)));
      }
    }
    if (v == 0) error_bits.push_back(b);
  }
  if (static_cast<int>(error_bits.size()) != L) {
    out.status = DecodeStatus::failure;
    return out;
  }
  for (int b : error_bits) out.word[b] ^= 1;
  out.status = DecodeStatus::corrected;
  out.corrected = L;
  return out;
}

}  // namespace xbar
