#include "bbig/machine.hpp"

#include <bit>
#include <stdexcept>

namespace bbig::machine {

// --- gamma -----------------------------------------------------------------

std::string gamma_encode(uint64_t n) {
  if (n == 0) throw std::invalid_argument("gamma_encode: n must be >= 1");
  int width = 64 - std::countl_zero(n);  // bits in binary expansion
  std::string out(width - 1, '0');
  for (int i = width - 1; i >= 0; --i) out.push_back((n >> i) & 1 ? '1' : '0');
  return out;
}

std::optional<uint64_t> gamma_decode(BitSource& src, std::string* consumed) {
  int zeros = 0;
  for (;;) {
    int b = src.next();
    if (b < 0) return std::nullopt;
    if (consumed) consumed->push_back(b ? '1' : '0');
    if (b == 1) break;
    if (++zeros > 62) throw std::runtime_error("gamma_decode: prefix too long");
  }
  uint64_t n = 1;
  for (int i = 0; i < zeros; ++i) {
    int b = src.next();
    if (b < 0) return std::nullopt;
    if (consumed) consumed->push_back(b ? '1' : '0');
    n = (n << 1) | static_cast<uint64_t>(b);
  }
  return n;
}

std::string encode_natural(const Nat& n) {
  Nat m = n + 1;
  std::string bin = m.get_str(2);
  std::string out(bin.size() - 1, '0');
  out += bin;
  return out;
}

std::optional<Nat> decode_natural(BitSource& src) {
  // gamma over arbitrary precision: same shape as gamma_decode
  int zeros = 0;
  for (;;) {
    int b = src.next();
    if (b < 0) return std::nullopt;
    if (b == 1) break;
    if (++zeros > (1 << 20)) throw std::runtime_error("decode_natural: prefix too long");
  }
  Nat n = 1;
  for (int i = 0; i < zeros; ++i) {
    int b = src.next();
    if (b < 0) return std::nullopt;
    n = n * 2 + b;
  }
  return n - 1;
}

std::string concat_sd(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

// --- program codec ---------------------------------------------------------

std::optional<Program> decode(BitSource& src) {
  Program p;
  for (;;) {
    int op = 0;
    for (int i = 0; i < 3; ++i) {
      int b = src.next();
      if (b < 0) return std::nullopt;
      p.bits.push_back(b ? '1' : '0');
      op = (op << 1) | b;
    }
    if (op == static_cast<int>(Opcode::kHalt)) return p;
    Instruction ins{static_cast<Opcode>(op)};
    if (ins.op == Opcode::kJnz) {
      auto off = gamma_decode(src, &p.bits);
      if (!off) return std::nullopt;
      ins.offset = static_cast<uint32_t>(*off);
    }
    p.instructions.push_back(ins);
  }
}

std::optional<Program> decode_bits(std::string_view bits) {
  StringBitSource src(bits);
  return decode(src);
}

std::string encode(const std::vector<Instruction>& instructions) {
  std::string out;
  auto put_op = [&out](Opcode op) {
    int v = static_cast<int>(op);
    out.push_back((v >> 2) & 1 ? '1' : '0');
    out.push_back((v >> 1) & 1 ? '1' : '0');
    out.push_back(v & 1 ? '1' : '0');
  };
  for (const auto& ins : instructions) {
    if (ins.op == Opcode::kHalt) throw std::invalid_argument("encode: HALT only terminates");
    put_op(ins.op);
    if (ins.op == Opcode::kJnz) out += gamma_encode(ins.offset);
  }
  put_op(Opcode::kHalt);
  return out;
}

Program make_program(const std::vector<Instruction>& instructions) {
  Program p;
  p.bits = encode(instructions);
  p.instructions = instructions;
  return p;
}

// --- interpreter -----------------------------------------------------------

ExecOutcome run_bounded(const Program& p, const Nat& input, uint64_t budget) {
  if (budget < 1) throw std::invalid_argument("run_bounded: budget must be >= 1");
  Nat acc = 0, reg = 0;
  size_t pc = 0;
  const size_t n = p.instructions.size();
  for (uint64_t step = 1; step <= budget; ++step) {
    if (pc >= n) {  // implicit trailing HALT
      ExecOutcome out;
      out.halted = true;
      out.value = acc;
      out.steps_used = step;
      return out;
    }
    const Instruction& ins = p.instructions[pc];
    switch (ins.op) {
      case Opcode::kInc: acc += 1; ++pc; break;
      case Opcode::kAdd: acc += reg; ++pc; break;
      case Opcode::kStore: reg = acc; ++pc; break;
      case Opcode::kDbl: acc *= 2; ++pc; break;
      case Opcode::kLoadW: acc = input; ++pc; break;
      case Opcode::kDec:
        if (acc > 0) acc -= 1;
        ++pc;
        break;
      case Opcode::kJnz:
        if (acc != 0) {
          // backward jump, clamped to instruction 0
          pc = ins.offset >= pc ? 0 : pc - ins.offset;
        } else {
          ++pc;
        }
        break;
      case Opcode::kHalt: throw std::logic_error("HALT in instruction body");
    }
  }
  return ExecOutcome::budget_exceeded();
}

// --- sampling --------------------------------------------------------------

Program sample_program(Rng& rng) {
  RngBitSource src(rng);
  auto p = decode(src);
  if (!p) throw std::runtime_error("sample_program: bit cap exceeded");
  return *p;
}

// --- counting and enumeration ----------------------------------------------

std::vector<uint64_t> program_counts(int max_len) {
  if (max_len < 0 || max_len > 30) throw std::invalid_argument("program_counts: max_len must be in [0, 30]");
  // f[L] = number of programs of exactly L bits. A program is HALT (3 bits)
  // or one leading instruction followed by a program: 6 non-jump opcodes of
  // 3 bits, or JNZ with a gamma offset of odd length 2j+1 (2^j offsets).
  std::vector<uint64_t> f(max_len + 1, 0);
  for (int L = 3; L <= max_len; ++L) {
    if (L == 3) f[L] = 1;
    if (L >= 6) f[L] += 6 * f[L - 3];
    for (int j = 0; 3 + (2 * j + 1) <= L - 3; ++j)
      f[L] += (uint64_t{1} << j) * f[L - 3 - (2 * j + 1)];
  }
  return f;
}

KraftSum kraft_sum(int max_len) {
  if (max_len < 0 || max_len > 30) throw std::invalid_argument("kraft_sum: max_len must be in [0, 30]");
  auto f = program_counts(max_len);
  uint64_t num = 0;
  for (int L = 0; L <= max_len; ++L) num += f[L] << (max_len - L);
  return {num, uint64_t{1} << max_len};
}

namespace {

void enumerate_rec(int max_len, std::vector<Instruction>& prefix, int bits_used,
                   const std::function<void(const Program&)>& visit) {
  if (bits_used + 3 <= max_len) visit(make_program(prefix));
  for (int op = 1; op < 8; ++op) {
    Opcode oc = static_cast<Opcode>(op);
    if (oc == Opcode::kJnz) {
      for (int j = 0;; ++j) {
        int glen = 2 * j + 1;
        if (bits_used + 3 + glen + 3 > max_len) break;
        for (uint64_t off = uint64_t{1} << j; off < (uint64_t{2} << j); ++off) {
          prefix.push_back({oc, static_cast<uint32_t>(off)});
          enumerate_rec(max_len, prefix, bits_used + 3 + glen, visit);
          prefix.pop_back();
        }
      }
    } else {
      if (bits_used + 3 + 3 > max_len) continue;
      prefix.push_back({oc});
      enumerate_rec(max_len, prefix, bits_used + 3, visit);
      prefix.pop_back();
    }
  }
}

}  // namespace

void enumerate_programs(int max_len, const std::function<void(const Program&)>& visit) {
  if (max_len < 0 || max_len > 30) throw std::invalid_argument("enumerate_programs: max_len must be in [0, 30]");
  std::vector<Instruction> prefix;
  enumerate_rec(max_len, prefix, 0, visit);
}

Nat bb_bounded(int k, uint64_t budget) {
  if (k > 30) throw std::invalid_argument("bb_bounded: k must be <= 30");
  Nat best = 0;
  enumerate_programs(k, [&](const Program& p) {
    ExecOutcome out = run_bounded(p, 0, budget);
    if (out.halted && out.value > best) best = out.value;
  });
  return best;
}

// --- complexity estimation -------------------------------------------------

uint64_t compress_proxy_bits(const Nat& value) {
  std::string bits = encode_natural(value);
  // LZ78 over the bit string: phrase k (1-based) costs ceil(lg k) index bits
  // plus one literal bit.
  std::map<std::string, uint64_t> dict;
  uint64_t cost = 0;
  uint64_t phrases = 0;
  std::string cur;
  for (size_t i = 0; i < bits.size(); ++i) {
    cur.push_back(bits[i]);
    if (dict.find(cur) == dict.end() || i + 1 == bits.size()) {
      ++phrases;
      int index_bits = phrases <= 1 ? 0 : 64 - std::countl_zero(phrases - 1);
      cost += static_cast<uint64_t>(index_bits) + 1;
      dict[cur] = phrases;
      cur.clear();
    }
  }
  return cost;
}

ExactTinyTable::ExactTinyTable(int cap_bits, uint64_t budget) : cap_bits_(cap_bits) {
  enumerate_programs(cap_bits, [&](const Program& p) {
    ExecOutcome out = run_bounded(p, 0, budget);
    if (!out.halted) return;
    auto it = min_len_.find(out.value);
    if (it == min_len_.end() || p.length() < it->second) min_len_[out.value] = p.length();
  });
}

std::optional<uint64_t> ExactTinyTable::lookup(const Nat& value) const {
  auto it = min_len_.find(value);
  if (it == min_len_.end()) return std::nullopt;
  return it->second;
}

ComplexityEstimator::ComplexityEstimator(EstimatorBackend backend, int exact_cap_bits,
                                         uint64_t budget)
    : backend_(backend) {
  if (backend == EstimatorBackend::kExactTiny)
    table_.emplace(exact_cap_bits, budget);
}

std::optional<ComplexityEstimate> ComplexityEstimator::estimate(const Nat& value) const {
  if (backend_ == EstimatorBackend::kCompressProxy)
    return ComplexityEstimate{compress_proxy_bits(value), backend_, false};
  auto len = table_->lookup(value);
  if (!len) return std::nullopt;
  return ComplexityEstimate{*len, backend_, false};
}

ComplexityEstimate ComplexityEstimator::estimate_with_fallback(const Nat& value) const {
  if (auto e = estimate(value)) return *e;
  return ComplexityEstimate{compress_proxy_bits(value), EstimatorBackend::kCompressProxy, true};
}

}  // namespace bbig::machine
