//
// Copyright (c) 2026-present, aspwb contributors
//
// This file is part of aspwb.
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//

#include <aspwb/analysis.hpp>
#include <aspwb/engine.hpp>

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace aspwb {

void GroundProgram::add(GroundRule r) {
    for (const auto* part : {&r.head, &r.body_pos, &r.body_neg}) {
        for (const auto& a : *part) { base.insert(a); }
    }
    rules.push_back(std::move(r));
}

namespace {

void check_cancel(const EngineOptions& opts) {
    if (opts.cancel && opts.cancel->load(std::memory_order_relaxed)) {
        throw Error(ErrorCode::cancelled, "grounding cancelled");
    }
}

using Bindings = std::map<std::string, Term>;

// ---------------------------------------------------------------------------
// Term instantiation
// ---------------------------------------------------------------------------

//! Every value a term denotes under the bindings; intervals yield several.
std::vector<Term> values_of(const Term& t, const Bindings& b) {
    switch (t.kind) {
        case TermKind::constant: {
            Term c = t;
            c.span = {};
            return {c};
        }
        case TermKind::variable: {
            auto it = b.find(t.name);
            if (it == b.end()) { throw Error(ErrorCode::non_ground, "unbound variable " + t.name); }
            return {it->second};
        }
        case TermKind::function: {
            std::vector<std::vector<Term>> partial{{}};
            for (const auto& a : t.args) {
                auto                           vs = values_of(a, b);
                std::vector<std::vector<Term>> next;
                for (const auto& p : partial) {
                    for (const auto& v : vs) {
                        next.push_back(p);
                        next.back().push_back(v);
                    }
                }
                partial = std::move(next);
            }
            std::vector<Term> out;
            for (auto& p : partial) { out.push_back(Term::make_function(t.name, std::move(p))); }
            return out;
        }
        case TermKind::arithmetic: {
            auto              ls = values_of(t.args[0], b);
            auto              rs = values_of(t.args[1], b);
            std::vector<Term> out;
            for (const auto& l : ls) {
                for (const auto& r : rs) { out.push_back(evaluate(Term::make_arithmetic(t.op, l, r))); }
            }
            return out;
        }
        case TermKind::interval: {
            auto              lo = values_of(t.args[0], b);
            auto              hi = values_of(t.args[1], b);
            std::vector<Term> out;
            for (const auto& l : lo) {
                for (const auto& h : hi) {
                    if (!l.is_integer() || !h.is_integer()) {
                        throw Error(ErrorCode::evaluation, "interval bound is not an integer in " + to_string(t));
                    }
                    for (std::int64_t v = l.integer; v <= h.integer; ++v) { out.push_back(Term::make_integer(v)); }
                }
            }
            return out;
        }
    }
    return {};
}

bool fully_bound(const Term& t, const Bindings& b) {
    bool ok = true;
    for_each_variable(t, [&](const Term& v) { ok = ok && (v.is_anonymous() ? false : b.count(v.name) != 0); });
    return ok;
}

struct Deferred {
    const Term* pattern;
    Term        value;
};

//! Matches pattern against a value, extending bindings. Arithmetic and
//! intervals with unbound variables are deferred.
bool match(const Term& pattern, const Term& value, Bindings& b, std::vector<std::string>& bound_here,
           std::vector<Deferred>& deferred) {
    switch (pattern.kind) {
        case TermKind::constant: return pattern == value;
        case TermKind::variable: {
            if (pattern.is_anonymous()) { return true; }
            auto it = b.find(pattern.name);
            if (it != b.end()) { return it->second == value; }
            b.emplace(pattern.name, value);
            bound_here.push_back(pattern.name);
            return true;
        }
        case TermKind::function:
            if (value.kind != TermKind::function || value.name != pattern.name || value.args.size() != pattern.args.size()) {
                return false;
            }
            for (std::size_t i = 0; i < pattern.args.size(); ++i) {
                if (!match(pattern.args[i], value.args[i], b, bound_here, deferred)) { return false; }
            }
            return true;
        case TermKind::arithmetic:
        case TermKind::interval:
            if (!fully_bound(pattern, b)) {
                deferred.push_back({&pattern, value});
                return true;
            }
            {
                auto vs = values_of(pattern, b);
                return std::find(vs.begin(), vs.end(), value) != vs.end();
            }
    }
    return false;
}

bool check_deferred(const std::vector<Deferred>& deferred, const Bindings& b) {
    for (const auto& d : deferred) {
        auto vs = values_of(*d.pattern, b);
        if (std::find(vs.begin(), vs.end(), d.value) == vs.end()) { return false; }
    }
    return true;
}

bool compare_values(RelOp op, const Term& l, const Term& r) {
    auto c = compare(l, r);
    switch (op) {
        case RelOp::eq: return c == 0;
        case RelOp::ne: return c != 0;
        case RelOp::lt: return c < 0;
        case RelOp::le: return c <= 0;
        case RelOp::gt: return c > 0;
        case RelOp::ge: return c >= 0;
    }
    return false;
}

bool holds(const BuiltinLiteral& bl, const Bindings& b) {
    Term l = evaluate(values_of(bl.left, b).front());
    Term r = evaluate(values_of(bl.right, b).front());
    if (bl.left.kind == TermKind::interval || bl.right.kind == TermKind::interval) {
        throw Error(ErrorCode::unsupported_construct, "interval inside comparison " + pretty_print(bl, Dialect::gringo));
    }
    return compare_values(bl.op, l, r);
}

//! Every ground literal a (possibly interval-bearing) literal denotes.
std::vector<GroundLiteral> instances_of(const StandardLiteral& l, const Bindings& b) {
    std::vector<std::vector<Term>> partial{{}};
    for (const auto& a : l.args) {
        auto                           vs = values_of(a, b);
        std::vector<std::vector<Term>> next;
        for (const auto& p : partial) {
            for (const auto& v : vs) {
                next.push_back(p);
                next.back().push_back(v);
            }
        }
        partial = std::move(next);
    }
    std::vector<GroundLiteral> out;
    for (auto& p : partial) { out.push_back(GroundLiteral::make(l.predicate, std::move(p), l.strong_negation)); }
    return out;
}

// ---------------------------------------------------------------------------
// Atom store
// ---------------------------------------------------------------------------
struct SignedKey {
    bool        neg;
    std::string name;
    std::size_t arity;
    auto operator<=>(const SignedKey&) const = default;
};

SignedKey key_of(const StandardLiteral& l) { return {l.strong_negation, l.predicate, l.arity()}; }
SignedKey key_of(const GroundLiteral& l) { return {l.strong_negation, l.predicate, l.args.size()}; }

class AtomStore {
public:
    bool add(const GroundLiteral& a) {
        if (!all_.insert(a).second) { return false; }
        by_key_[key_of(a)].push_back(a);
        return true;
    }
    [[nodiscard]] bool contains(const GroundLiteral& a) const { return all_.count(a) != 0; }
    [[nodiscard]] const std::vector<GroundLiteral>& with_key(const SignedKey& k) const {
        static const std::vector<GroundLiteral> none;
        auto                                    it = by_key_.find(k);
        return it == by_key_.end() ? none : it->second;
    }
    [[nodiscard]] std::size_t size() const { return all_.size(); }

    //! Atoms added since the previous call become the delta of the new round.
    void next_round() {
        prev_ = cur_;
        for (const auto& [k, v] : by_key_) { cur_[k] = v.size(); }
    }

    enum class Window { all, old, delta, current };

    [[nodiscard]] std::pair<std::size_t, std::size_t> range(const SignedKey& k, Window w) const {
        auto at = [&k](const std::map<SignedKey, std::size_t>& m) {
            auto it = m.find(k);
            return it == m.end() ? std::size_t{0} : it->second;
        };
        switch (w) {
            case Window::all: return {0, with_key(k).size()};
            case Window::old: return {0, at(prev_)};
            case Window::delta: return {at(prev_), at(cur_)};
            case Window::current: break;
        }
        return {0, at(cur_)};
    }

private:
    std::set<GroundLiteral>                           all_;
    std::map<SignedKey, std::vector<GroundLiteral>> by_key_;
    std::map<SignedKey, std::size_t>                 prev_;
    std::map<SignedKey, std::size_t>                 cur_;
};

// ---------------------------------------------------------------------------
// Rule instantiation
// ---------------------------------------------------------------------------
struct CompiledRule {
    const Rule*                         rule = nullptr;
    std::vector<const StandardLiteral*> positive;     //!< plain positive body literals
    std::vector<const StandardLiteral*> negative;     //!< plain negated body literals
    std::vector<const StandardLiteral*> conditional;  //!< body literals with conditions
    std::vector<const BuiltinLiteral*>  builtins;
    bool                                deterministic = false;
};

class Grounder {
public:
    Grounder(const Program& p, const EngineOptions& opts)
        : program_(p)
        , opts_(opts) {}

    GroundProgram run() {
        compile();
        compute_deterministic_model();
        AtomStore possible;
        for (bool first = true;; first = false) {
            bool changed = false;
            possible.next_round();
            for (const auto& cr : compiled_) {
                check_cancel(opts_);
                // the store is being joined over, so new atoms wait until the rule is done
                std::vector<GroundLiteral> derived;
                each_instance(cr, possible, first, [&](GroundRule&& gr) {
                    derived.insert(derived.end(), gr.head.begin(), gr.head.end());
                    record(std::move(gr));
                });
                for (const auto& h : derived) {
                    if (possible.add(h)) {
                        changed = true;
                        if (possible.size() > opts_.max_atoms) {
                            throw Error(ErrorCode::capacity, "grounding exceeds the atom bound max_atoms=" +
                                                                 std::to_string(opts_.max_atoms));
                        }
                    }
                }
            }
            if (!changed) { break; }
        }
        GroundProgram out;
        for (auto& [k, gr] : rules_) {
            // negative literals over underivable atoms always hold
            std::erase_if(gr.body_neg, [&](const GroundLiteral& a) { return !possible.contains(a); });
            out.add(std::move(gr));
        }
        return out;
    }

private:
    void compile() {
        auto safety = check_safety(program_);
        if (!safety.empty()) {
            const auto& d = safety.front();
            throw Error(ErrorCode::safety, d.message + " at " + std::to_string(d.span.start_line) + ":" +
                                               std::to_string(d.span.start_col));
        }
        for (const auto& r : program_.rules) {
            if (r.choice_head) {
                throw Error(ErrorCode::unsupported_construct, "choice rules are not supported by the internal engine");
            }
            CompiledRule cr;
            cr.rule = &r;
            for (const auto& b : r.body) {
                if (std::holds_alternative<AggregateLiteral>(b)) {
                    throw Error(ErrorCode::unsupported_construct, "aggregates are not supported by the internal engine");
                }
                if (const auto* bl = std::get_if<BuiltinLiteral>(&b)) {
                    cr.builtins.push_back(bl);
                    continue;
                }
                const auto& s = std::get<StandardLiteral>(b);
                if (!s.conditions.empty()) { cr.conditional.push_back(&s); }
                else if (s.default_negation) { cr.negative.push_back(&s); }
                else { cr.positive.push_back(&s); }
            }
            bool head_plain = r.head.size() == 1 && r.head.front().conditions.empty();
            cr.deterministic = head_plain && cr.negative.empty() && cr.conditional.empty();
            compiled_.push_back(cr);
        }
        // a predicate is deterministic when every rule defining it is
        for (const auto& cr : compiled_) {
            for (const auto& h : cr.rule->head) {
                auto k = key_of(h);
                auto it = det_pred_.find(k);
                det_pred_[k] = (it == det_pred_.end() ? true : it->second) && cr.deterministic;
            }
        }
        for (const auto& cr : compiled_) {
            auto check_conditions = [&](const StandardLiteral& l) {
                for (const auto& c : l.conditions) {
                    auto it = det_pred_.find(key_of(c));
                    if (it != det_pred_.end() && !it->second) {
                        throw Error(ErrorCode::unsupported_construct,
                                    "condition " + pretty_print(c, Dialect::gringo) +
                                        " ranges over a non-deterministic predicate");
                    }
                }
            };
            for (const auto* l : cr.conditional) { check_conditions(*l); }
            for (const auto& h : cr.rule->head) { check_conditions(h); }
        }
    }

    void compute_deterministic_model() {
        for (bool first = true;; first = false) {
            bool changed = false;
            det_.next_round();
            for (const auto& cr : compiled_) {
                if (!cr.deterministic) { continue; }
                check_cancel(opts_);
                std::vector<GroundLiteral> derived;
                each_instance(cr, det_, first, [&](GroundRule&& gr) { derived.insert(derived.end(), gr.head.begin(), gr.head.end()); });
                for (const auto& h : derived) { changed = det_.add(h) || changed; }
                if (det_.size() > opts_.max_atoms) {
                    throw Error(ErrorCode::capacity,
                                "grounding exceeds the atom bound max_atoms=" + std::to_string(opts_.max_atoms));
                }
            }
            if (!changed) { break; }
        }
    }

    void record(GroundRule&& gr) {
        std::string key;
        for (const auto& h : gr.head) { key += to_string(h) + "|"; }
        key += ":-";
        for (const auto& p : gr.body_pos) { key += to_string(p) + ","; }
        key += ";";
        for (const auto& n : gr.body_neg) { key += to_string(n) + ","; }
        if (rules_.emplace(std::move(key), std::move(gr)).second && rules_.size() > opts_.max_rules) {
            throw Error(ErrorCode::capacity,
                        "grounding exceeds the rule bound max_rules=" + std::to_string(opts_.max_rules));
        }
    }

    //! Instances of l's conditional expansion under b, evaluated against the
    //! deterministic model.
    std::vector<GroundLiteral> expand_conditional(const StandardLiteral& l, const Bindings& b) {
        std::vector<GroundLiteral> out;
        std::vector<const StandardLiteral*> pos;
        std::vector<const StandardLiteral*> neg;
        for (const auto& c : l.conditions) { (c.default_negation ? neg : pos).push_back(&c); }
        Bindings              local = b;
        std::vector<Deferred> deferred;
        std::vector<const GroundLiteral*> matched;
        join(pos, 0, all_window, local, deferred, matched, det_, [&](const Bindings& full) {
            for (const auto* n : neg) {
                for (const auto& a : instances_of(*n, full)) {
                    if (det_.contains(a)) { return; }
                }
            }
            for (auto& a : instances_of(l, full)) {
                if (std::find(out.begin(), out.end(), a) == out.end()) { out.push_back(std::move(a)); }
            }
        });
        return out;
    }

    static constexpr int all_window     = -2;
    static constexpr int current_window = -1;

    //! Semi-naive evaluation: after the first round an instance is new only if
    //! some positive literal matches an atom from the last round's delta.
    //! Positive conditions read the store outside the join, so those rules are
    //! re-evaluated in full.
    template <typename Emit>
    void each_instance(const CompiledRule& cr, const AtomStore& store, bool first, Emit&& emit) {
        bool naive = std::any_of(cr.conditional.begin(), cr.conditional.end(),
                                 [](const StandardLiteral* c) { return !c->default_negation; });
        if (naive || cr.positive.empty()) {
            if (naive || first) { instantiate(cr, store, current_window, emit); }
            return;
        }
        for (std::size_t d = 0; d < cr.positive.size(); ++d) { instantiate(cr, store, static_cast<int>(d), emit); }
    }

    //! delta is the literal index restricted to the delta window, or one of
    //! all_window / current_window.
    template <typename Fn>
    void join(const std::vector<const StandardLiteral*>& lits, std::size_t i, int delta, Bindings& b,
              std::vector<Deferred>& deferred, std::vector<const GroundLiteral*>& matched, const AtomStore& store,
              Fn&& fn) {
        if (i == lits.size()) {
            if (check_deferred(deferred, b)) { fn(b); }
            return;
        }
        const auto& l    = *lits[i];
        auto        key  = key_of(l);
        using W          = AtomStore::Window;
        auto        ii   = static_cast<int>(i);
        W           w    = delta == all_window ? W::all
                           : delta < 0         ? W::current
                           : ii < delta        ? W::old
                           : ii == delta       ? W::delta
                                               : W::current;
        auto [lo, hi]    = store.range(key, w);
        const auto& atoms = store.with_key(key);
        for (std::size_t ai = lo; ai < hi; ++ai) {
            const auto& atom = atoms[ai];
            std::vector<std::string> bound_here;
            std::size_t              deferred_mark = deferred.size();
            bool                     ok            = true;
            for (std::size_t k = 0; ok && k < l.args.size(); ++k) {
                ok = match(l.args[k], atom.args[k], b, bound_here, deferred);
            }
            if (ok) {
                matched.push_back(&atom);
                join(lits, i + 1, delta, b, deferred, matched, store, fn);
                matched.pop_back();
            }
            for (const auto& n : bound_here) { b.erase(n); }
            deferred.resize(deferred_mark);
        }
    }

    template <typename Emit>
    void instantiate(const CompiledRule& cr, const AtomStore& store, int delta, Emit&& emit) {
        Bindings              b;
        std::vector<Deferred> deferred;
        std::vector<const GroundLiteral*> matched;
        join(cr.positive, 0, delta, b, deferred, matched, store, [&](const Bindings& full) {
            for (const auto* bl : cr.builtins) {
                if (!holds(*bl, full)) { return; }
            }
            // alternatives per slot; the cartesian product gives the rules
            GroundRule base;
            for (const auto* a : matched) { base.body_pos.push_back(*a); }
            for (const auto* c : cr.conditional) {
                auto inst = expand_conditional(*c, full);
                if (c->default_negation) {
                    base.body_neg.insert(base.body_neg.end(), inst.begin(), inst.end());
                }
                else {
                    for (const auto& a : inst) {
                        if (!store.contains(a)) { return; }
                    }
                    base.body_pos.insert(base.body_pos.end(), inst.begin(), inst.end());
                }
            }
            for (const auto& h : cr.rule->head) {
                if (!h.conditions.empty()) {
                    auto inst = expand_conditional(h, full);
                    base.head.insert(base.head.end(), inst.begin(), inst.end());
                }
            }
            std::vector<std::vector<GroundLiteral>> head_slots;
            for (const auto& h : cr.rule->head) {
                if (h.conditions.empty()) { head_slots.push_back(instances_of(h, full)); }
            }
            std::vector<std::vector<GroundLiteral>> neg_slots;
            for (const auto* n : cr.negative) { neg_slots.push_back(instances_of(*n, full)); }
            product(base, head_slots, neg_slots, 0, emit);
        });
    }

    template <typename Emit>
    void product(const GroundRule& partial, const std::vector<std::vector<GroundLiteral>>& heads,
                 const std::vector<std::vector<GroundLiteral>>& negs, std::size_t i, Emit&& emit) {
        if (i == heads.size() + negs.size()) {
            GroundRule r = partial;
            dedupe(r.head);
            dedupe(r.body_pos);
            dedupe(r.body_neg);
            emit(std::move(r));
            return;
        }
        bool        is_head = i < heads.size();
        const auto& slot    = is_head ? heads[i] : negs[i - heads.size()];
        for (const auto& a : slot) {
            GroundRule next = partial;
            (is_head ? next.head : next.body_neg).push_back(a);
            product(next, heads, negs, i + 1, emit);
        }
    }

    static void dedupe(std::vector<GroundLiteral>& v) {
        std::vector<GroundLiteral> out;
        for (auto& a : v) {
            if (std::find(out.begin(), out.end(), a) == out.end()) { out.push_back(std::move(a)); }
        }
        v = std::move(out);
    }

    const Program&               program_;
    const EngineOptions&         opts_;
    std::vector<CompiledRule>    compiled_;
    std::map<SignedKey, bool>    det_pred_;
    AtomStore                    det_;
    std::map<std::string, GroundRule> rules_;
};

} // namespace

GroundProgram ground(const Program& program, const EngineOptions& opts) { return Grounder(program, opts).run(); }

} // namespace aspwb
