#ifndef STEPLTL_BUECHI_HPP
#define STEPLTL_BUECHI_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "stepltl/errors.hpp"
#include "stepltl/words.hpp"

namespace stepltl {

// ── Nondeterministic Buechi automata ────────────────────────────────────────
// Explicit alphabet: every transition is labelled with one concrete subset
// of the proposition universe.  A letter with no matching transition rejects.

using State = std::uint32_t;

struct NBA {
    std::vector<std::string> props;  // sorted universe
    State num_states = 0;
    State initial = 0;
    std::set<State> accepting;
    std::set<std::tuple<State, Letter, State>> transitions;

    std::vector<State> successors(State from, const Letter& letter) const {
        std::vector<State> out;
        auto it = transitions.lower_bound({from, letter, 0});
        for (; it != transitions.end(); ++it) {
            const auto& [src, lab, dst] = *it;
            if (src != from || !(lab == letter)) break;
            out.push_back(dst);
        }
        return out;
    }
};

// ── Text format ─────────────────────────────────────────────────────────────
//   props p [q ...]
//   states N
//   init S
//   accepting S [S ...]
//   trans S {letter} S      (one line per transition)
// Blank lines and lines starting with '#' are skipped; any other directive
// is an error.

inline NBA parse_nba(const std::string& text) {
    NBA a;
    bool saw_props = false, saw_states = false, saw_init = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    auto err = [&lineno](const std::string& msg) -> ParseError {
        return ParseError(lineno, 1, msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string directive;
        ls >> directive;
        if (directive == "props") {
            std::string name;
            while (ls >> name) a.props.push_back(name);
            if (a.props.empty()) throw err("props line lists no propositions");
            std::sort(a.props.begin(), a.props.end());
            a.props.erase(std::unique(a.props.begin(), a.props.end()), a.props.end());
            saw_props = true;
        } else if (directive == "states") {
            long long n = -1;
            ls >> n;
            if (n < 1) throw err("states must be a positive count");
            a.num_states = static_cast<State>(n);
            saw_states = true;
        } else if (directive == "init") {
            long long s = -1;
            ls >> s;
            if (!saw_states || s < 0 || s >= static_cast<long long>(a.num_states))
                throw err("init names an undefined state");
            a.initial = static_cast<State>(s);
            saw_init = true;
        } else if (directive == "accepting") {
            long long s;
            while (ls >> s) {
                if (!saw_states || s < 0 || s >= static_cast<long long>(a.num_states))
                    throw err("accepting names an undefined state");
                a.accepting.insert(static_cast<State>(s));
            }
        } else if (directive == "trans") {
            long long src = -1, dst = -1;
            std::string letter_text;
            ls >> src >> letter_text >> dst;
            if (!saw_props) throw err("trans before props");
            if (!saw_states || src < 0 || src >= static_cast<long long>(a.num_states) ||
                dst < 0 || dst >= static_cast<long long>(a.num_states))
                throw err("trans names an undefined state");
            Letter l = detail::parse_letter(letter_text, a.props);
            a.transitions.insert({static_cast<State>(src), l, static_cast<State>(dst)});
        } else {
            throw err("unknown directive '" + directive + "'");
        }
    }
    if (!saw_props) throw ParseError(lineno, 1, "missing props");
    if (!saw_states) throw ParseError(lineno, 1, "missing states");
    if (!saw_init) throw ParseError(lineno, 1, "missing init");
    return a;
}

inline std::string render_nba(const NBA& a) {
    std::string out = "props";
    for (const auto& p : a.props) out += " " + p;
    out += "\nstates " + std::to_string(a.num_states);
    out += "\ninit " + std::to_string(a.initial);
    if (!a.accepting.empty()) {
        out += "\naccepting";
        for (State s : a.accepting) out += " " + std::to_string(s);
    }
    out += "\n";
    for (const auto& [src, letter, dst] : a.transitions)
        out += "trans " + std::to_string(src) + " " + letter.to_string() + " " +
               std::to_string(dst) + "\n";
    return out;
}

// ── P(k) and unions ─────────────────────────────────────────────────────────

// k-state cycle over {p}: state r means "position = r (mod k)".  Leaving
// state 0 requires p; every state accepts.  L = L(P(k)).
inline NBA pk_automaton(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("pk_automaton: k must be >= 1");
    NBA a;
    a.props = {"p"};
    a.num_states = static_cast<State>(k);
    a.initial = 0;
    Letter with_p(std::vector<std::string>{"p"});
    Letter without_p;
    for (State r = 0; r < k; ++r) {
        a.accepting.insert(r);
        State next = static_cast<State>((r + 1) % k);
        if (r == 0) {
            a.transitions.insert({r, with_p, next});
        } else {
            a.transitions.insert({r, with_p, next});
            a.transitions.insert({r, without_p, next});
        }
    }
    return a;
}

// Disjoint union, with a fresh initial state that mimics every component's
// initial transitions.  L = union of the component languages.
inline NBA union_automaton(const std::vector<NBA>& parts) {
    NBA u;
    u.num_states = 1;
    u.initial = 0;
    if (parts.empty()) return u;  // one state, no transitions: empty language
    u.props = parts.front().props;
    for (const auto& part : parts)
        if (part.props != u.props)
            throw std::invalid_argument("union_automaton: proposition universes differ");
    State offset = 1;
    for (const auto& part : parts) {
        for (const auto& [src, letter, dst] : part.transitions) {
            u.transitions.insert({static_cast<State>(src + offset), letter,
                                  static_cast<State>(dst + offset)});
            if (src == part.initial)
                u.transitions.insert({0, letter, static_cast<State>(dst + offset)});
        }
        for (State s : part.accepting)
            u.accepting.insert(static_cast<State>(s + offset));
        if (part.accepting.count(part.initial)) u.accepting.insert(0);
        offset += part.num_states;
    }
    u.num_states = offset;
    return u;
}

// ── Lasso membership ────────────────────────────────────────────────────────
//
// Positions of a lasso word fall into s + l classes (prefix positions, then
// loop offsets); the run graph is the product of automaton states with these
// classes.  The word is accepted iff some accepting product node is
// reachable from the start and lies on a cycle.

// An accepting run in closed form: states[0 .. cycleStart + cycleLen], where
// states[cycleStart + cycleLen] == states[cycleStart] and the cycle repeats
// forever.  The cycle length is a multiple of the word's loop length and
// cycleStart is at or past the prefix end, so the repetition reads the same
// letters on every lap.
struct LassoRun {
    std::vector<State> states;
    std::uint64_t cycle_start = 0;

    std::uint64_t cycle_len() const { return states.size() - 1 - cycle_start; }

    State state_at(std::uint64_t pos) const {
        if (pos <= cycle_start) return states[pos];
        return states[cycle_start + (pos - cycle_start) % cycle_len()];
    }
};

// Transition-checks a run against its word, position by position, plus the
// closure and acceptance conditions.  Used by tests and by the refuter's
// self-verification.
inline bool run_is_valid(const NBA& a, const LassoWord& w, const LassoRun& run) {
    if (run.states.size() < 2) return false;
    if (run.cycle_start + 1 >= run.states.size()) return false;
    if (run.states.front() != a.initial) return false;
    if (run.states.back() != run.states[run.cycle_start]) return false;
    if (run.cycle_start < w.prefix_len()) return false;
    if (run.cycle_len() % w.loop_len() != 0) return false;
    bool accepting_in_cycle = false;
    for (std::uint64_t i = run.cycle_start; i < run.states.size() - 1; ++i)
        if (a.accepting.count(run.states[i])) accepting_in_cycle = true;
    if (!accepting_in_cycle) return false;
    for (std::uint64_t i = 0; i + 1 < run.states.size(); ++i) {
        if (!a.transitions.count({run.states[i], w.letter_at(i), run.states[i + 1]}))
            return false;
    }
    return true;
}

namespace detail {

struct ProductGraph {
    const NBA* a;
    const LassoWord* w;
    std::uint64_t s, l;

    std::uint64_t num_classes() const { return s + l; }
    std::uint64_t succ_class(std::uint64_t c) const { return c + 1 < s + l ? c + 1 : s; }
    const Letter& class_letter(std::uint64_t c) const {
        return c < s ? w->prefix[c] : w->loop[c - s];
    }

    std::uint64_t node(State q, std::uint64_t c) const { return q * num_classes() + c; }

    std::vector<std::uint64_t> successors(std::uint64_t n) const {
        State q = static_cast<State>(n / num_classes());
        std::uint64_t c = n % num_classes();
        std::vector<std::uint64_t> out;
        for (State q2 : a->successors(q, class_letter(c)))
            out.push_back(node(q2, succ_class(c)));
        return out;
    }
};

// BFS returning parent links; parent of the source is itself.
inline std::vector<std::int64_t> bfs(const ProductGraph& g, std::uint64_t source,
                                     std::uint64_t node_count) {
    std::vector<std::int64_t> parent(node_count, -1);
    std::deque<std::uint64_t> queue{source};
    parent[source] = static_cast<std::int64_t>(source);
    while (!queue.empty()) {
        std::uint64_t n = queue.front();
        queue.pop_front();
        for (std::uint64_t m : g.successors(n)) {
            if (parent[m] >= 0) continue;
            parent[m] = static_cast<std::int64_t>(n);
            queue.push_back(m);
        }
    }
    return parent;
}

}  // namespace detail

inline std::optional<LassoRun> nba_member(const NBA& a, const LassoWord& w) {
    if (a.props != w.props)
        throw std::invalid_argument("nba_member: proposition universes differ");
    detail::ProductGraph g{&a, &w, w.prefix_len(), w.loop_len()};
    std::uint64_t node_count = static_cast<std::uint64_t>(a.num_states) * g.num_classes();
    std::uint64_t start = g.node(a.initial, 0);
    auto reach = detail::bfs(g, start, node_count);

    for (State q = 0; q < a.num_states; ++q) {
        if (!a.accepting.count(q)) continue;
        for (std::uint64_t c = g.s; c < g.num_classes(); ++c) {
            std::uint64_t anchor = g.node(q, c);
            if (reach[anchor] < 0) continue;
            // anchor lies on a cycle iff it is reachable from one of its
            // own successors
            std::optional<std::vector<std::uint64_t>> cycle;
            for (std::uint64_t m : g.successors(anchor)) {
                auto from_m = detail::bfs(g, m, node_count);
                if (from_m[anchor] < 0) continue;
                std::vector<std::uint64_t> path;  // m .. anchor
                for (std::uint64_t n = anchor;; n = static_cast<std::uint64_t>(from_m[n])) {
                    path.push_back(n);
                    if (n == m) break;
                }
                std::reverse(path.begin(), path.end());
                cycle = std::move(path);
                break;
            }
            if (!cycle) continue;

            std::vector<std::uint64_t> stem;  // start .. anchor
            for (std::uint64_t n = anchor;; n = static_cast<std::uint64_t>(reach[n])) {
                stem.push_back(n);
                if (n == start) break;
            }
            std::reverse(stem.begin(), stem.end());

            LassoRun run;
            for (std::uint64_t n : stem) run.states.push_back(static_cast<State>(n / g.num_classes()));
            run.cycle_start = stem.size() - 1;
            for (std::uint64_t n : *cycle) run.states.push_back(static_cast<State>(n / g.num_classes()));
            if (!run_is_valid(a, w, run))
                throw std::logic_error("nba_member: constructed run failed validation");
            return run;
        }
    }
    return std::nullopt;
}

// ── Theorem 1 refuter ───────────────────────────────────────────────────────
//
// Every automaton either rejects some word of the union (the probe
// (p;~p^m)^omega with m = |states|+2 lies in L(P(m+1))), or accepts it with
// a run whose states repeat inside one ~p block of the run's cycle; pumping
// that repetition inserts extra ~p letters, and the loop residue of the
// pumped word is arranged to miss p, so the pumped word leaves the union
// while the pumped run still accepts.  Either way L(a) != U_k L(P(k)), with
// a machine-checkable witness.

struct PumpRecord {
    std::uint64_t m = 0;           // probe block length; probe loop is (p;~p^m)
    std::uint64_t block_start = 0; // position of the p opening the pumped block
    std::uint64_t i = 0, j = 0;    // 0 < i < j < m+1, run repeats at block_start+i/j
    std::uint64_t ell = 0;         // copies of the repeated segment inserted
};

struct RefutationWitness {
    enum class Kind { RejectedMember, AcceptedNonMember };
    Kind kind;
    LassoWord word;
    std::uint64_t k = 0;  // RejectedMember: word in L(P(k)) yet rejected
    std::optional<LassoRun> run;      // AcceptedNonMember: accepting run on word
    std::optional<PumpRecord> pump;
};

inline RefutationWitness refute_recognizer(const NBA& a) {
    if (!std::binary_search(a.props.begin(), a.props.end(), std::string("p")))
        throw std::invalid_argument("refute_recognizer: automaton lacks proposition p");

    std::uint64_t n = a.num_states;
    std::uint64_t m = n + 2;
    Letter with_p(std::vector<std::string>{"p"});
    Letter without_p;

    LassoWord probe;
    probe.props = a.props;
    probe.loop.push_back(with_p);
    for (std::uint64_t i = 0; i < m; ++i) probe.loop.push_back(without_p);

    auto run_opt = nba_member(a, probe);
    if (!run_opt) {
        RefutationWitness wit;
        wit.kind = RefutationWitness::Kind::RejectedMember;
        wit.word = probe;
        wit.k = m + 1;
        auto membership = is_in_union_pk(probe);
        if (!membership.is_member() || *membership.member_k != m + 1)
            throw std::logic_error("refute: probe word failed the membership check");
        return wit;
    }
    const LassoRun& run = *run_opt;

    // First ~p block lying entirely inside the run's cycle.
    std::uint64_t t = 0;
    while (t * (m + 1) < run.cycle_start) ++t;
    std::uint64_t block_start = t * (m + 1);

    // Pigeonhole: the block has m = n+2 > n inner positions.
    std::uint64_t pi = 0, pj = 0;
    bool found = false;
    for (std::uint64_t i = 1; i < m + 1 && !found; ++i)
        for (std::uint64_t j = i + 1; j < m + 1 && !found; ++j)
            if (run.state_at(block_start + i) == run.state_at(block_start + j)) {
                pi = i;
                pj = j;
                found = true;
            }
    if (!found) throw std::logic_error("refute: pigeonhole repeat not found");

    std::uint64_t ell = 1;
    while ((m + (pj - pi) * ell + 1) % (m + 1) == 0) ++ell;
    std::uint64_t inserted = (pj - pi) * ell;

    // Pumped word: probe letters through the block's end, with `inserted`
    // extra ~p letters, then the probe loop.
    LassoWord pumped;
    pumped.props = a.props;
    std::uint64_t prefix_len = block_start + m + 1 + inserted;
    for (std::uint64_t pos = 0; pos < prefix_len; ++pos) {
        bool is_p = pos <= block_start && pos % (m + 1) == 0;
        pumped.prefix.push_back(is_p ? with_p : without_p);
    }
    pumped.loop = probe.loop;

    // Pumped run: original up to block_start+pi, the segment
    // (block_start+pi, block_start+pj] repeated ell extra times, then the
    // original shifted by `inserted`.
    auto pumped_state = [&](std::uint64_t pos) -> State {
        if (pos <= block_start + pi) return run.state_at(pos);
        if (pos <= block_start + pi + inserted) {
            std::uint64_t d = (pos - block_start - pi - 1) % (pj - pi) + 1;
            return run.state_at(block_start + pi + d);
        }
        return run.state_at(pos - inserted);
    };
    LassoRun pumped_run;
    pumped_run.cycle_start = prefix_len;
    std::uint64_t cycle_len = run.cycle_len();
    for (std::uint64_t pos = 0; pos <= prefix_len + cycle_len; ++pos)
        pumped_run.states.push_back(pumped_state(pos));

    if (!run_is_valid(a, pumped, pumped_run))
        throw std::logic_error("refute: pumped run failed validation");
    if (is_in_union_pk(pumped).is_member())
        throw std::logic_error("refute: pumped word unexpectedly in the union");
    if (!nba_member(a, pumped))
        throw std::logic_error("refute: pumped word unexpectedly rejected");

    RefutationWitness wit;
    wit.kind = RefutationWitness::Kind::AcceptedNonMember;
    wit.word = pumped;
    wit.run = pumped_run;
    wit.pump = PumpRecord{m, block_start, pi, pj, ell};
    return wit;
}

}  // namespace stepltl

#endif  // STEPLTL_BUECHI_HPP
