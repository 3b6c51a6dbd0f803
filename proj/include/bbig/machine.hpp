#pragma once

// Self-delimiting binary program language and its step-budget-bounded
// interpreter. The encoding is a terminator code: a program is a sequence of
// non-HALT instructions (3-bit opcodes, JNZ followed by an Elias-gamma
// backward offset) ended by HALT (000). No valid program is a prefix of
// another and the Kraft sum over all programs tends to 1, so feeding random
// bits to the decoder samples programs with probability exactly 2^-|p|.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbig/util.hpp"

namespace bbig::machine {

using Nat = mpz_class;

enum class Opcode : uint8_t {
  kHalt = 0,   // 000  output accumulator, terminates decoding
  kInc = 1,    // 001  A <- A+1
  kAdd = 2,    // 010  A <- A+R
  kStore = 3,  // 011  R <- A
  kDbl = 4,    // 100  A <- 2A
  kLoadW = 5,  // 101  A <- input
  kJnz = 6,    // 110  + gamma offset; if A != 0 jump back `offset` instructions
  kDec = 7,    // 111  A <- A monus 1
};

struct Instruction {
  Opcode op;
  uint32_t offset = 0;  // JNZ only, >= 1
};

struct Program {
  std::string bits;  // ASCII '0'/'1', the exact prefix the decoder consumed
  std::vector<Instruction> instructions;  // excludes the trailing HALT

  size_t length() const { return bits.size(); }
  bool operator==(const Program& o) const { return bits == o.bits; }
};

// --- bit sources -----------------------------------------------------------

class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual int next() = 0;  // 0, 1, or -1 when exhausted
};

class StringBitSource final : public BitSource {
 public:
  explicit StringBitSource(std::string_view bits) : bits_(bits) {}
  int next() override {
    if (pos_ >= bits_.size()) return -1;
    return bits_[pos_++] == '1' ? 1 : 0;
  }
  size_t consumed() const { return pos_; }

 private:
  std::string_view bits_;
  size_t pos_ = 0;
};

class RngBitSource final : public BitSource {
 public:
  explicit RngBitSource(Rng& rng, size_t cap = size_t{1} << 20)
      : rng_(rng), cap_(cap) {}
  int next() override {
    if (drawn_ >= cap_) return -1;
    ++drawn_;
    return rng_.bit();
  }

 private:
  Rng& rng_;
  size_t cap_;
  size_t drawn_ = 0;
};

// --- self-delimiting codes -------------------------------------------------

// Elias gamma code for n >= 1; complete over the positive integers.
std::string gamma_encode(uint64_t n);
std::optional<uint64_t> gamma_decode(BitSource& src, std::string* consumed = nullptr);

// Naturals (n >= 0) ride on gamma via n+1.
std::string encode_natural(const Nat& n);
std::optional<Nat> decode_natural(BitSource& src);

// Concatenation of already self-delimiting components; sequential decoding
// recovers each component.
std::string concat_sd(const std::vector<std::string>& parts);

// --- programs --------------------------------------------------------------

// Consumes the minimal prefix that forms a valid program. nullopt = the
// stream ended mid-program (Incomplete).
std::optional<Program> decode(BitSource& src);
std::optional<Program> decode_bits(std::string_view bits);  // convenience

std::string encode(const std::vector<Instruction>& instructions);
Program make_program(const std::vector<Instruction>& instructions);

// --- bounded execution -----------------------------------------------------

struct ExecOutcome {
  bool halted = false;
  Nat value;            // accumulator at HALT
  uint64_t steps_used = 0;  // only meaningful when halted

  static ExecOutcome budget_exceeded() { return {}; }
};

// Deterministic interpreter: accumulator A, register R (both unbounded
// naturals), program counter. Every executed instruction, HALT included,
// costs one step. Runs that do not halt within `budget` steps come back as
// BudgetExceeded, which callers must treat as the non-halting label 0.
ExecOutcome run_bounded(const Program& p, const Nat& input, uint64_t budget);

// --- sampling and enumeration ---------------------------------------------

// Draws random bits until the decoder completes; realizes probability
// 2^-|p| per program. Throws std::runtime_error if the 2^20-bit cap fires
// (expected never).
Program sample_program(Rng& rng);

// Exact rational sum of 2^-|p| over all programs with |p| <= max_len,
// computed by a length-count recurrence. max_len <= 30.
struct KraftSum {
  uint64_t numerator;
  uint64_t denominator;  // 2^max_len
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};
KraftSum kraft_sum(int max_len);

// Number of valid programs of each exact bit length up to max_len.
std::vector<uint64_t> program_counts(int max_len);

// Visits every valid program with |p| <= max_len in lexicographic bit order.
void enumerate_programs(int max_len, const std::function<void(const Program&)>& visit);

// Largest halted output over all programs of length <= k on input 0 within
// budget; 0 when none halts. k <= 30.
Nat bb_bounded(int k, uint64_t budget);

// --- complexity estimation -------------------------------------------------

enum class EstimatorBackend { kExactTiny, kCompressProxy };

struct ComplexityEstimate {
  uint64_t bits = 0;
  EstimatorBackend backend = EstimatorBackend::kCompressProxy;
  bool fell_back = false;  // ExactTiny requested but unavailable for the value
};

// Version tag of the compression proxy (gamma encode, then LZ78 over the bit
// string, report the compressed length). Bump on any change to the scheme.
inline constexpr int kProxyVersion = 1;

uint64_t compress_proxy_bits(const Nat& value);

// Shortest-program table built once by enumeration: value -> min |p| over
// programs with run_bounded(p, 0, budget) halting on that value.
class ExactTinyTable {
 public:
  ExactTinyTable(int cap_bits, uint64_t budget);
  std::optional<uint64_t> lookup(const Nat& value) const;
  int cap_bits() const { return cap_bits_; }

 private:
  int cap_bits_;
  std::map<Nat, uint64_t> min_len_;
};

class ComplexityEstimator {
 public:
  ComplexityEstimator(EstimatorBackend backend, int exact_cap_bits, uint64_t budget);

  // ExactTiny beyond the enumeration cap returns nullopt (caller falls back
  // to estimate_with_fallback or the proxy directly).
  std::optional<ComplexityEstimate> estimate(const Nat& value) const;
  ComplexityEstimate estimate_with_fallback(const Nat& value) const;

  EstimatorBackend backend() const { return backend_; }

 private:
  EstimatorBackend backend_;
  std::optional<ExactTinyTable> table_;
};

}  // namespace bbig::machine
