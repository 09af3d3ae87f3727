#pragma once

#include <span>
#include <vector>

#include "xbarchan/gf2m.hpp"

namespace xbar {

/// Shortened narrow-sense binary BCH code parameters.
struct CodeSpec {
  int n = 0;        // block length
  int k = 0;        // information bits
  int t = 0;        // designed error-correction capability
  int m_field = 0;  // code shortened from primitive length 2^m_field - 1

  double rate() const { return static_cast<double>(k) / n; }
};

/// Systematic codeword: k data bits followed by n-k parity bits, one
/// byte per bit.
struct Codeword {
  std::vector<uint8_t> bits;
};

enum class DecodeStatus { corrected, failure };

struct DecodeResult {
  std::vector<uint8_t> word;  // corrected codeword, or the received word
                              // unchanged on failure
  DecodeStatus status = DecodeStatus::failure;
  int corrected = 0;          // number of bit flips applied
};

/// Narrow-sense binary BCH codec, shortened from the smallest primitive
/// length 2^m - 1 >= n. Immutable after construction; encode/decode are
/// reentrant.
class BchCode {
 public:
  /// Throws std::invalid_argument if no field of degree <= 16 fits or
  /// the generator leaves no data bits at this (n, t).
  BchCode(int n, int t);

  const CodeSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  int k() const { return spec_.k; }
  int t() const { return spec_.t; }

  /// Systematic encoding; data.size() must equal k.
  Codeword encode(std::span<const uint8_t> data) const;

  /// Syndromes, Berlekamp-Massey, Chien search. Up to t errors are
  /// corrected; a detected-uncorrectable word is returned unchanged
  /// with failure status.
  DecodeResult decode(std::span<const uint8_t> received) const;

  /// The generator polynomial, coeff[i] = x^i.
  const Gf2Poly& generator() const { return generator_; }

 private:
  CodeSpec spec_;
  Gf2m field_;
  Gf2Poly generator_;
};

/// Convenience spelling matching the construction operation.
inline BchCode make_code(int n, int t) { return BchCode(n, t); }

}  // namespace xbar
