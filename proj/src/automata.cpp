#include "logfloor/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace logfloor {

Dfa::Dfa(unsigned alphabet_size, std::size_t state_count, State start)
    : alphabet_(alphabet_size), start_(start), delta_(state_count * alphabet_size, 0), accept_(state_count, 0) {
  if (alphabet_size < 1) throw std::invalid_argument("empty alphabet");
  if (start >= state_count) throw std::invalid_argument("start state out of range");
}

Dfa::State Dfa::run(std::span<const Digit> word) const {
  State s = start_;
  for (Digit a : word) {
    if (a >= alphabet_) throw std::invalid_argument("digit outside the automaton alphabet");
    s = next(s, a);
  }
  return s;
}

std::optional<Dfa::State> Dfa::dead_state() const {
  for (State s = 0; s < state_count(); ++s) {
    if (accepting(s)) continue;
    bool loops = true;
    for (Digit a = 0; a < alphabet_ && loops; ++a) loops = next(s, a) == s;
    if (loops) return s;
  }
  return std::nullopt;
}

std::size_t Dfa::live_state_count() const { return state_count() - (dead_state() ? 1 : 0); }

Dfa minimize(const Dfa& dfa) {
  const unsigned k = dfa.alphabet_size();
  // Reachable states.
  std::vector<Dfa::State> order;
  std::vector<std::int64_t> index(dfa.state_count(), -1);
  order.push_back(dfa.start());
  index[dfa.start()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Digit a = 0; a < k; ++a) {
      const Dfa::State t = dfa.next(order[i], a);
      if (index[t] < 0) {
        index[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();

  // Moore refinement over the reachable part.
  std::vector<std::size_t> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = dfa.accepting(order[i]) ? 1 : 0;
  std::size_t blocks = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> refined(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> signature{block[i]};
      for (Digit a = 0; a < k; ++a) signature.push_back(block[static_cast<std::size_t>(index[dfa.next(order[i], a)])]);
      refined[i] = ids.emplace(std::move(signature), ids.size()).first->second;
    }
    block = std::move(refined);
    if (ids.size() == blocks) break;
    blocks = ids.size();
  }

  // Quotient, numbered in BFS order from the start block.
  std::vector<std::int64_t> number(blocks, -1);
  std::vector<std::size_t> representative;
  std::vector<std::size_t> queue{block[0]};
  number[block[0]] = 0;
  std::vector<std::size_t> rep_of_block(blocks);
  for (std::size_t i = 0; i < n; ++i) rep_of_block[block[i]] = i;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t rep = rep_of_block[queue[q]];
    for (Digit a = 0; a < k; ++a) {
      const std::size_t target = block[static_cast<std::size_t>(index[dfa.next(order[rep], a)])];
      if (number[target] < 0) {
        number[target] = static_cast<std::int64_t>(queue.size());
        queue.push_back(target);
      }
    }
  }
  Dfa out(k, queue.size(), 0);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t rep = rep_of_block[queue[q]];
    const auto s = static_cast<Dfa::State>(q);
    out.set_accepting(s, dfa.accepting(order[rep]));
    for (Digit a = 0; a < k; ++a) {
      const std::size_t target = block[static_cast<std::size_t>(index[dfa.next(order[rep], a)])];
      out.set_next(s, a, static_cast<Dfa::State>(number[target]));
    }
  }
  return out;
}

namespace {

// Nondeterministic automaton with several initial states and no epsilon moves.
struct Nfa {
  explicit Nfa(unsigned base) : base(base) {}

  std::size_t add_state() {
    edges.emplace_back(base);
    accepting.push_back(false);
    return edges.size() - 1;
  }
  void add_edge(std::size_t from, Digit a, std::size_t to) { edges[from][a].push_back(to); }

  // Follows an existing or fresh chain for `word` from `from`; returns the end.
  std::size_t add_path(std::size_t from, const Word& word) {
    std::size_t s = from;
    for (Digit a : word.digits()) {
      const std::size_t t = add_state();
      add_edge(s, a, t);
      s = t;
    }
    return s;
  }

  unsigned base;
  std::vector<std::vector<std::vector<std::size_t>>> edges;
  std::vector<bool> accepting;
  std::vector<std::size_t> initial;
};

void check_base(const Word& w, unsigned base) {
  if (!w.empty() && w.base() != base) {
    throw std::invalid_argument("word " + w.to_string() + " is over base " + std::to_string(w.base()) +
                                ", expected " + std::to_string(base));
  }
}

Dfa determinize(const Nfa& nfa) {
  std::map<std::vector<std::size_t>, Dfa::State> ids;
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> init = nfa.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  ids.emplace(init, 0);
  sets.push_back(init);
  std::vector<std::vector<Dfa::State>> delta;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    delta.emplace_back(nfa.base);
    for (Digit a = 0; a < nfa.base; ++a) {
      std::vector<std::size_t> target;
      for (std::size_t s : sets[i]) {
        const auto& out = nfa.edges[s][a];
        target.insert(target.end(), out.begin(), out.end());
      }
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      auto [it, fresh] = ids.emplace(target, static_cast<Dfa::State>(sets.size()));
      if (fresh) sets.push_back(target);
      delta[i][a] = it->second;
    }
  }
  Dfa dfa(nfa.base, sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto s = static_cast<Dfa::State>(i);
    bool acc = false;
    for (std::size_t q : sets[i]) acc = acc || nfa.accepting[q];
    dfa.set_accepting(s, acc);
    for (Digit a = 0; a < nfa.base; ++a) dfa.set_next(s, a, delta[i][a]);
  }
  return dfa;
}

}  // namespace

Dfa from_patterns(std::span<const WordPattern> patterns, std::span<const Word> exceptions, unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  Nfa nfa(base);
  const std::size_t root = nfa.add_state();
  nfa.initial.push_back(root);
  for (const Word& w : exceptions) {
    check_base(w, base);
    nfa.accepting[nfa.add_path(root, w)] = true;
  }
  for (const WordPattern& p : patterns) {
    check_base(p.head, base);
    check_base(p.loop, base);
    check_base(p.tail, base);
    if (p.loop.empty()) throw std::invalid_argument("pattern loop must be non-empty");
    const std::size_t start = nfa.add_state();
    nfa.initial.push_back(start);
    const std::size_t hub = nfa.add_path(start, p.head);
    // hub --loop--> hub
    std::size_t s = hub;
    for (std::size_t i = 0; i < p.loop.size(); ++i) {
      const std::size_t t = i + 1 == p.loop.size() ? hub : nfa.add_state();
      nfa.add_edge(s, p.loop[i], t);
      s = t;
    }
    nfa.accepting[nfa.add_path(hub, p.tail)] = true;
  }
  return minimize(determinize(nfa));
}

Dfa trie_dfa(std::span<const Word> words, unsigned base) { return from_patterns({}, words, base); }

namespace {

Equivalence product_search(const Dfa& a, const Dfa& b, std::optional<std::size_t> max_len) {
  if (a.alphabet_size() != b.alphabet_size()) throw std::invalid_argument("alphabet mismatch");
  using Pair = std::pair<Dfa::State, Dfa::State>;
  struct Visit {
    Pair parent;
    Digit symbol;
    std::size_t depth;
  };
  std::map<Pair, Visit> seen;
  std::deque<Pair> queue;
  const Pair origin{a.start(), b.start()};
  seen.emplace(origin, Visit{origin, 0, 0});
  queue.push_back(origin);
  while (!queue.empty()) {
    const Pair cur = queue.front();
    queue.pop_front();
    const Visit& here = seen.at(cur);
    if (a.accepting(cur.first) != b.accepting(cur.second)) {
      Equivalence out{false, {}};
      for (Pair p = cur; p != origin;) {
        const Visit& v = seen.at(p);
        out.witness.push_back(v.symbol);
        p = v.parent;
      }
      std::reverse(out.witness.begin(), out.witness.end());
      return out;
    }
    if (max_len && here.depth >= *max_len) continue;
    const std::size_t depth = here.depth;
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      const Pair nxt{a.next(cur.first, d), b.next(cur.second, d)};
      if (seen.emplace(nxt, Visit{cur, d, depth + 1}).second) queue.push_back(nxt);
    }
  }
  return {};
}

}  // namespace

Equivalence equivalent(const Dfa& a, const Dfa& b) { return product_search(a, b, std::nullopt); }

Equivalence equivalent_up_to_length(const Dfa& a, const Dfa& b, std::size_t max_len) {
  return product_search(a, b, max_len);
}

std::vector<Word> enumerate_accepted(const Dfa& dfa, std::size_t max_len, std::size_t limit) {
  // Co-reachability prunes branches that can never accept within the bound.
  const std::size_t n = dfa.state_count();
  std::vector<std::vector<std::uint8_t>> can(max_len + 1, std::vector<std::uint8_t>(n, 0));
  for (Dfa::State s = 0; s < n; ++s) can[0][s] = dfa.accepting(s) ? 1 : 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (Dfa::State s = 0; s < n; ++s) {
      bool ok = can[len - 1][s] != 0;
      for (Digit a = 0; a < dfa.alphabet_size() && !ok; ++a) ok = can[len - 1][dfa.next(s, a)] != 0;
      can[len][s] = ok ? 1 : 0;
    }
  }
  std::vector<Word> out;
  std::vector<std::pair<Dfa::State, std::vector<Digit>>> layer{{dfa.start(), {}}};
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::pair<Dfa::State, std::vector<Digit>>> next_layer;
    for (auto& [s, w] : layer) {
      if (dfa.accepting(s)) {
        out.emplace_back(dfa.alphabet_size() < 2 ? 2 : dfa.alphabet_size(), w);
        if (out.size() >= limit) return out;
      }
      if (len == max_len) continue;
      for (Digit a = 0; a < dfa.alphabet_size(); ++a) {
        const Dfa::State t = dfa.next(s, a);
        if (can[max_len - len - 1][t] == 0) continue;
        std::vector<Digit> longer = w;
        longer.push_back(a);
        next_layer.emplace_back(t, std::move(longer));
      }
    }
    layer = std::move(next_layer);
  }
  return out;
}

Dfao dfao_from_dfa(const Dfa& m) {
  const unsigned k = m.alphabet_size();
  // State 0 reads leading zeros; states 1.. mirror m.
  Dfa machine(k, m.state_count() + 1, 0);
  const std::vector<Digit> zero{0};
  machine.set_accepting(0, m.accepts(zero));
  machine.set_next(0, 0, 0);
  for (Digit a = 1; a < k; ++a) machine.set_next(0, a, m.next(m.start(), a) + 1);
  for (Dfa::State s = 0; s < m.state_count(); ++s) {
    machine.set_accepting(s + 1, m.accepting(s));
    for (Digit a = 0; a < k; ++a) machine.set_next(s + 1, a, m.next(s, a) + 1);
  }
  return Dfao(minimize(machine));
}

namespace {

std::string dot_body(const Dfa& dfa, std::string_view name, bool outputs) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n  __start [shape=point];\n";
  out << "  __start -> " << dfa.start() << ";\n";
  for (Dfa::State s = 0; s < dfa.state_count(); ++s) {
    if (outputs) {
      out << "  " << s << " [label=\"" << s << "/" << (dfa.accepting(s) ? 1 : 0) << "\"];\n";
    } else if (dfa.accepting(s)) {
      out << "  " << s << " [shape=doublecircle];\n";
    }
  }
  for (Dfa::State s = 0; s < dfa.state_count(); ++s) {
    std::map<Dfa::State, std::string> labels;
    for (Digit a = 0; a < dfa.alphabet_size(); ++a) {
      std::string& label = labels[dfa.next(s, a)];
      if (!label.empty()) label += ",";
      label += std::to_string(a);
    }
    for (const auto& [t, label] : labels) out << "  " << s << " -> " << t << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_dot(const Dfa& dfa, std::string_view name) { return dot_body(dfa, name, false); }

std::string to_dot(const Dfao& dfao, std::string_view name) { return dot_body(dfao.machine(), name, true); }

KernelReport kernel_explore(std::span<const std::int64_t> seq, unsigned base, unsigned depth,
                            std::size_t prefix_len) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (prefix_len < 1) throw std::invalid_argument("prefix length must be positive");
  const BigInt needed = ipow(BigInt(base), depth) * static_cast<unsigned long>(prefix_len);
  if (needed > static_cast<unsigned long>(seq.size())) {
    throw std::out_of_range("kernel exploration to depth " + std::to_string(depth) + " needs " +
                            needed.get_str() + " terms, have " + std::to_string(seq.size()));
  }
  KernelReport report;
  report.base = base;
  report.depth = depth;
  report.prefix_len = prefix_len;

  // Kernel element (i, j): n -> seq[b^i n + j]; its children are
  // (i + 1, j + b^i e) for digits e. Only newly seen elements are expanded.
  auto fingerprint = [&](std::size_t stride, std::size_t offset) {
    std::vector<std::int64_t> fp(prefix_len);
    for (std::size_t n = 0; n < prefix_len; ++n) fp[n] = seq[stride * n + offset];
    return fp;
  };
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::size_t> frontier{0};
  seen.insert(fingerprint(1, 0));
  report.distinct_by_depth.push_back(seen.size());
  std::size_t stride = 1;
  for (unsigned d = 1; d <= depth; ++d) {
    std::vector<std::size_t> next;
    for (std::size_t j : frontier) {
      for (std::size_t e = 0; e < base; ++e) {
        const std::size_t child = j + stride * e;
        if (seen.insert(fingerprint(stride * base, child)).second) next.push_back(child);
      }
    }
    stride *= base;
    report.distinct_by_depth.push_back(seen.size());
    frontier = std::move(next);
    if (frontier.empty()) {
      report.closure = true;
      while (report.distinct_by_depth.size() <= depth) report.distinct_by_depth.push_back(seen.size());
      break;
    }
  }
  report.distinct = seen.size();
  return report;
}

}  // namespace logfloor
