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

#include <aspwb/engine.hpp>

#include <algorithm>
#include <map>

namespace aspwb {

GroundProgram reduct(const GroundProgram& program, const std::set<GroundLiteral>& candidate) {
    GroundProgram out;
    out.base = program.base;
    for (const auto& r : program.rules) {
        bool blocked = std::any_of(r.body_neg.begin(), r.body_neg.end(),
                                   [&](const GroundLiteral& a) { return candidate.count(a) != 0; });
        if (blocked) { continue; }
        out.rules.push_back({r.head, r.body_pos, {}});
    }
    return out;
}

namespace {

struct IRule {
    std::vector<int> head;
    std::vector<int> pos;
    std::vector<int> neg;
};

//! Ground program over atom ids; ids follow the sorted base.
struct Indexed {
    std::vector<GroundLiteral> atoms;
    std::vector<IRule>         rules;

    explicit Indexed(const GroundProgram& gp)
        : atoms(gp.base.begin(), gp.base.end()) {
        auto ids = [&](const std::vector<GroundLiteral>& v) {
            std::vector<int> out;
            out.reserve(v.size());
            for (const auto& a : v) { out.push_back(id(a)); }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        };
        for (const auto& r : gp.rules) { rules.push_back({ids(r.head), ids(r.body_pos), ids(r.body_neg)}); }
        // a and -a exclude each other
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (!atoms[i].strong_negation) { continue; }
            int c = find(atoms[i].complement());
            if (c >= 0) { rules.push_back({{}, {std::min<int>(c, static_cast<int>(i)), std::max<int>(c, static_cast<int>(i))}, {}}); }
        }
    }

    [[nodiscard]] int find(const GroundLiteral& a) const {
        auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
        return it != atoms.end() && *it == a ? static_cast<int>(it - atoms.begin()) : -1;
    }
    [[nodiscard]] int id(const GroundLiteral& a) const {
        int i = find(a);
        if (i < 0) { throw Error(ErrorCode::consistency, "atom outside the base: " + to_string(a)); }
        return i;
    }
};

// ---------------------------------------------------------------------------
// Minimality: is there a model J of the reduct with J a proper subset of I?
// ---------------------------------------------------------------------------

//! Tiny DPLL over clauses of signed variables (v+1 / -(v+1)).
class Sat {
public:
    Sat(int vars, std::vector<std::vector<int>> clauses)
        : val_(static_cast<std::size_t>(vars), 0)
        , clauses_(std::move(clauses)) {}

    bool solve() { return search(); }

private:
    // 0 unknown, 1 true, -1 false
    int lit_value(int l) const {
        int v = val_[static_cast<std::size_t>(std::abs(l) - 1)];
        return l > 0 ? v : -v;
    }

    bool search() {
        std::vector<int> assigned;
        auto             undo = [&] {
            for (int v : assigned) { val_[static_cast<std::size_t>(v)] = 0; }
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& c : clauses_) {
                int  unknown = 0;
                int  last    = 0;
                bool sat     = false;
                for (int l : c) {
                    int v = lit_value(l);
                    if (v > 0) {
                        sat = true;
                        break;
                    }
                    if (v == 0) {
                        ++unknown;
                        last = l;
                    }
                }
                if (sat) { continue; }
                if (unknown == 0) {
                    undo();
                    return false;
                }
                if (unknown == 1) {
                    auto var               = static_cast<std::size_t>(std::abs(last) - 1);
                    val_[var]              = last > 0 ? 1 : -1;
                    assigned.push_back(static_cast<int>(var));
                    changed = true;
                }
            }
        }
        auto free = std::find(val_.begin(), val_.end(), 0);
        if (free == val_.end()) { return true; }
        auto var = static_cast<std::size_t>(free - val_.begin());
        for (int choice : {-1, 1}) {
            val_[var] = static_cast<signed char>(choice);
            if (search()) { return true; }
        }
        val_[var] = 0;
        undo();
        return false;
    }

    std::vector<signed char>      val_;
    std::vector<std::vector<int>> clauses_;
};

//! I (true atoms in `in`) is a model of the reduct; checks minimality.
bool minimal(const Indexed& ix, const std::vector<signed char>& in) {
    std::vector<const IRule*> active;
    bool                      horn = true;
    for (const auto& r : ix.rules) {
        bool neg_blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return in[static_cast<std::size_t>(a)] > 0; });
        bool pos_in = std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return in[static_cast<std::size_t>(a)] > 0; });
        if (neg_blocked || !pos_in) { continue; }
        active.push_back(&r);
        auto true_heads = std::count_if(r.head.begin(), r.head.end(), [&](int a) { return in[static_cast<std::size_t>(a)] > 0; });
        if (true_heads > 1) { horn = false; }
    }
    if (horn) {
        // every active rule has one true head: least model of h :- pos
        std::vector<char> lm(in.size(), 0);
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto* r : active) {
                if (!std::all_of(r->pos.begin(), r->pos.end(), [&](int a) { return lm[static_cast<std::size_t>(a)] != 0; })) {
                    continue;
                }
                for (int h : r->head) {
                    if (in[static_cast<std::size_t>(h)] > 0 && lm[static_cast<std::size_t>(h)] == 0) {
                        lm[static_cast<std::size_t>(h)] = 1;
                        changed                         = true;
                    }
                }
            }
        }
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (in[i] > 0 && lm[i] == 0) { return false; }
        }
        return true;
    }
    std::map<int, int> var; // atom id -> sat variable
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] > 0) { var.emplace(static_cast<int>(i), static_cast<int>(var.size()) + 1); }
    }
    std::vector<std::vector<int>> clauses;
    for (const auto* r : active) {
        std::vector<int> c;
        for (int h : r->head) {
            if (in[static_cast<std::size_t>(h)] > 0) { c.push_back(var[h]); }
        }
        for (int p : r->pos) { c.push_back(-var[p]); }
        clauses.push_back(std::move(c));
    }
    std::vector<int> smaller;
    for (const auto& [a, v] : var) { smaller.push_back(-v); }
    clauses.push_back(std::move(smaller));
    return !Sat(static_cast<int>(var.size()), std::move(clauses)).solve();
}

bool is_model(const Indexed& ix, const std::vector<signed char>& in) {
    for (const auto& r : ix.rules) {
        auto t = [&](int a) { return in[static_cast<std::size_t>(a)] > 0; };
        bool body = std::all_of(r.pos.begin(), r.pos.end(), t) && std::none_of(r.neg.begin(), r.neg.end(), t);
        if (body && std::none_of(r.head.begin(), r.head.end(), t)) { return false; }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------
class Search {
public:
    Search(const Indexed& ix, const EngineOptions& opts)
        : ix_(ix)
        , opts_(opts)
        , val_(ix.atoms.size(), -1)
        , occ_(ix.atoms.size())
        , heads_of_(ix.atoms.size()) {
        for (std::size_t r = 0; r < ix.rules.size(); ++r) {
            const auto& rule = ix.rules[r];
            for (const auto* part : {&rule.head, &rule.pos, &rule.neg}) {
                for (int a : *part) { occ_[static_cast<std::size_t>(a)].push_back(r); }
            }
            for (int h : rule.head) { heads_of_[static_cast<std::size_t>(h)].push_back(r); }
        }
        for (auto& o : occ_) { o.erase(std::unique(o.begin(), o.end()), o.end()); }
    }

    void run(std::optional<std::size_t> limit, std::vector<Interpretation>& out) {
        limit_ = limit;
        out_   = &out;
        bool ok = true;
        for (std::size_t r = 0; ok && r < ix_.rules.size(); ++r) { ok = check_rule(r); }
        for (std::size_t a = 0; ok && a < ix_.atoms.size(); ++a) { ok = check_support(static_cast<int>(a)); }
        if (ok && propagate()) { dfs(0); }
    }

private:
    bool done() const { return limit_ && out_->size() >= *limit_; }

    bool assign(int a, signed char v) {
        auto& cur = val_[static_cast<std::size_t>(a)];
        if (cur == v) { return true; }
        if (cur != -1) { return false; }
        cur = v;
        trail_.push_back(a);
        return true;
    }

    [[nodiscard]] signed char value(int a) const { return val_[static_cast<std::size_t>(a)]; }

    bool check_rule(std::size_t ri) {
        const auto& r          = ix_.rules[ri];
        int         body_unk   = 0;
        int         last_body  = 0;
        bool        last_neg   = false;
        for (int a : r.pos) {
            if (value(a) == 0) { return true; }
            if (value(a) == -1) {
                ++body_unk;
                last_body = a;
                last_neg  = false;
            }
        }
        for (int a : r.neg) {
            if (value(a) == 1) { return true; }
            if (value(a) == -1) {
                ++body_unk;
                last_body = a;
                last_neg  = true;
            }
        }
        int head_unk  = 0;
        int last_head = 0;
        for (int h : r.head) {
            if (value(h) == 1) { return true; }
            if (value(h) == -1) {
                ++head_unk;
                last_head = h;
            }
        }
        if (body_unk == 0) {
            if (head_unk == 0) { return false; }
            if (head_unk == 1) { return assign(last_head, 1); }
        }
        else if (head_unk == 0 && body_unk == 1) {
            return assign(last_body, last_neg ? 1 : 0);
        }
        return true;
    }

    bool candidate(std::size_t ri, int a) const {
        const auto& r = ix_.rules[ri];
        for (int p : r.pos) {
            if (value(p) == 0) { return false; }
        }
        for (int n : r.neg) {
            if (value(n) == 1) { return false; }
        }
        for (int h : r.head) {
            if (h != a && value(h) == 1) { return false; }
        }
        return true;
    }

    //! A true atom needs a rule whose body holds and whose other heads fail.
    bool check_support(int a) {
        if (value(a) == 0) { return true; }
        int         count = 0;
        std::size_t only  = 0;
        for (auto ri : heads_of_[static_cast<std::size_t>(a)]) {
            if (candidate(ri, a)) {
                ++count;
                only = ri;
                if (count > 1) { break; }
            }
        }
        if (count == 0) { return value(a) == -1 ? assign(a, 0) : false; }
        if (count == 1 && value(a) == 1) {
            const auto& r = ix_.rules[only];
            for (int p : r.pos) {
                if (!assign(p, 1)) { return false; }
            }
            for (int n : r.neg) {
                if (!assign(n, 0)) { return false; }
            }
            for (int h : r.head) {
                if (h != a && !assign(h, 0)) { return false; }
            }
        }
        return true;
    }

    bool propagate() {
        while (head_ < trail_.size()) {
            int a = trail_[head_++];
            if (!check_support(a)) { return false; }
            for (auto ri : occ_[static_cast<std::size_t>(a)]) {
                if (!check_rule(ri)) { return false; }
                for (int h : ix_.rules[ri].head) {
                    if (!check_support(h)) { return false; }
                }
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            val_[static_cast<std::size_t>(trail_.back())] = -1;
            trail_.pop_back();
        }
        head_ = std::min(head_, mark);
    }

    void dfs(std::size_t from) {
        if (done()) { return; }
        if (opts_.cancel && opts_.cancel->load(std::memory_order_relaxed)) {
            throw Error(ErrorCode::cancelled, "search cancelled");
        }
        while (from < val_.size() && val_[from] != -1) { ++from; }
        if (from == val_.size()) {
            if (is_model(ix_, val_) && minimal(ix_, val_)) {
                Interpretation I;
                for (std::size_t i = 0; i < val_.size(); ++i) {
                    if (val_[i] == 1) { I.add(ix_.atoms[i]); }
                }
                out_->push_back(std::move(I));
            }
            return;
        }
        for (signed char v : {1, 0}) {
            std::size_t mark = trail_.size();
            if (assign(static_cast<int>(from), v) && propagate()) { dfs(from + 1); }
            undo_to(mark);
            if (done()) { return; }
        }
    }

    const Indexed&                        ix_;
    const EngineOptions&                  opts_;
    std::vector<signed char>              val_;
    std::vector<std::vector<std::size_t>> occ_;
    std::vector<std::vector<std::size_t>> heads_of_;
    std::vector<int>                      trail_;
    std::size_t                           head_ = 0;
    std::optional<std::size_t>            limit_;
    std::vector<Interpretation>*          out_ = nullptr;
};

} // namespace

bool is_answer_set(const GroundProgram& program, const std::set<GroundLiteral>& candidate) {
    for (const auto& a : candidate) {
        if (program.base.count(a) == 0) { return false; }
        if (a.strong_negation && candidate.count(a.complement()) != 0) { return false; }
    }
    Indexed                  ix(program);
    std::vector<signed char> in(ix.atoms.size(), 0);
    for (const auto& a : candidate) { in[static_cast<std::size_t>(ix.id(a))] = 1; }
    return is_model(ix, in) && minimal(ix, in);
}

std::vector<Interpretation> answer_sets(const GroundProgram& program, std::optional<std::size_t> limit,
                                        const EngineOptions& opts) {
    if (program.base.size() > opts.max_atoms) {
        throw Error(ErrorCode::capacity,
                    "ground program exceeds the atom bound max_atoms=" + std::to_string(opts.max_atoms));
    }
    std::vector<Interpretation> out;
    if (limit && *limit == 0) { return out; }
    Indexed ix(program);
    Search(ix, opts).run(limit, out);
    return out;
}

std::vector<Interpretation> solve(const Program& program, std::optional<std::size_t> limit, const EngineOptions& opts) {
    return answer_sets(ground(program, opts), limit, opts);
}

} // namespace aspwb
