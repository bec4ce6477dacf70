// Deterministic finite automata over digit alphabets {0, ..., b-1}.
//
// Automata read words most-significant digit first, the order in which (n)_b
// is written. Minimization is Moore-style partition refinement; equivalence
// is a breadth-first search of the product automaton, so counterexamples are
// shortest. Minimized automata number their states in BFS order from the
// start state (symbols in increasing order), which keeps dumps diff-stable.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logfloor/numeration.hpp"

namespace logfloor {

class Dfa {
 public:
  using State = std::uint32_t;

  Dfa() = default;
  /// All transitions initially lead to state 0; callers fill them in.
  Dfa(unsigned alphabet_size, std::size_t state_count, State start);

  unsigned alphabet_size() const { return alphabet_; }
  std::size_t state_count() const { return accept_.size(); }
  State start() const { return start_; }

  State next(State s, Digit a) const { return delta_[static_cast<std::size_t>(s) * alphabet_ + a]; }
  void set_next(State s, Digit a, State t) { delta_[static_cast<std::size_t>(s) * alphabet_ + a] = t; }
  bool accepting(State s) const { return accept_[s] != 0; }
  void set_accepting(State s, bool on) { accept_[s] = on ? 1 : 0; }

  State run(std::span<const Digit> word) const;
  bool accepts(std::span<const Digit> word) const { return accepting(run(word)); }
  bool accepts(const Word& word) const { return accepts(word.digits()); }

  /// A non-accepting state whose transitions all loop back to itself.
  std::optional<State> dead_state() const;
  /// States other than the dead state.
  std::size_t live_state_count() const;

 private:
  unsigned alphabet_ = 2;
  State start_ = 0;
  std::vector<State> delta_;
  std::vector<std::uint8_t> accept_;
};

/// Minimal complete DFA for the same language, unreachable states removed,
/// states renumbered in BFS order.
Dfa minimize(const Dfa& dfa);

/// The word family head · loop* · tail. loop must be non-empty.
struct WordPattern {
  Word head;
  Word loop;
  Word tail;
};

/// Minimal DFA accepting exceptions ∪ ⋃ head·loop*·tail. Throws
/// std::invalid_argument for words over another base or an empty loop.
Dfa from_patterns(std::span<const WordPattern> patterns, std::span<const Word> exceptions, unsigned base);

/// Minimal DFA accepting exactly the given finite set of words.
Dfa trie_dfa(std::span<const Word> words, unsigned base);

struct Equivalence {
  bool equivalent = true;
  /// A shortest word accepted by exactly one automaton, when not equivalent.
  std::vector<Digit> witness;
};

/// Language equality. Throws std::invalid_argument on alphabet mismatch.
Equivalence equivalent(const Dfa& a, const Dfa& b);

/// Language equality restricted to words of length <= max_len.
Equivalence equivalent_up_to_length(const Dfa& a, const Dfa& b, std::size_t max_len);

/// Accepted words of length <= max_len, shortlex order.
std::vector<Word> enumerate_accepted(const Dfa& dfa, std::size_t max_len, std::size_t limit = 100000);

/// DFA with output: computes the characteristic word of a set S when fed
/// (n)_b. Leading zeros are ignored, so n may be padded on the left.
class Dfao {
 public:
  Dfao() = default;
  explicit Dfao(Dfa machine) : machine_(std::move(machine)) {}

  const Dfa& machine() const { return machine_; }
  unsigned base() const { return machine_.alphabet_size(); }
  std::size_t state_count() const { return machine_.state_count(); }
  int output(Dfa::State s) const { return machine_.accepting(s) ? 1 : 0; }

  int eval(std::span<const Digit> digits) const { return output(machine_.run(digits)); }
  int eval(const BigInt& n) const { return eval(to_word(n, base()).digits()); }

 private:
  Dfa machine_;
};

/// m must accept only canonical expansions (no leading zeros; "0" for 0).
/// The result outputs 1 on n exactly when m accepts (n)_b.
Dfao dfao_from_dfa(const Dfa& m);

std::string to_dot(const Dfa& dfa, std::string_view name = "dfa");
std::string to_dot(const Dfao& dfao, std::string_view name = "dfao");

/// Breadth-first exploration of the b-kernel {n -> s(b^i n + j)}. Kernel
/// elements are identified when their first prefix_len terms agree, and only
/// newly seen elements are expanded, so the counts under-approximate the
/// kernel and closure is evidence, not proof.
struct KernelReport {
  unsigned base = 2;
  unsigned depth = 0;
  std::size_t prefix_len = 0;
  /// distinct_by_depth[i]: distinct fingerprints found through depth i.
  std::vector<std::size_t> distinct_by_depth;
  std::size_t distinct = 0;
  /// Every child of the frontier was already represented.
  bool closure = false;
};

/// seq must hold at least b^depth * prefix_len terms; throws
/// std::out_of_range otherwise.
KernelReport kernel_explore(std::span<const std::int64_t> seq, unsigned base, unsigned depth,
                            std::size_t prefix_len);

}  // namespace logfloor
