#pragma once

// Small-scope lemma checker.
//
// Every heap with up to N cells is enumerated: the first n cells are
// allocated, each allocated cell points to nil or to one of the allocated
// cells, and carries a handle from {0, 1}. For each heap, every lemma is
// evaluated over all bindings of its free variables. A lemma that is a
// theorem of the model yields no counterexample; a falsified "mutant" of it
// must yield at least one, which keeps the harness honest.

#include "esapi_model/logic_lists.hpp"
#include "esapi_model/memory_model.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <ranges>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace esapi_model {

inline constexpr std::size_t kMaxHeapNodes = 6;

/// One enumerated heap. Satisfies Memory, so every list predicate runs on it
/// directly. Unallocated cells are zeroed (next = nil, handle 0).
struct HeapConfig
{
    std::size_t cap = 1;
    std::size_t n_allocated = 0;
    std::array<NodeRef, kMaxHeapNodes> next{};
    std::array<std::uint32_t, kMaxHeapNodes> handle{};

    std::size_t capacity() const noexcept { return cap; }
    std::size_t alloc_idx() const noexcept { return n_allocated; }
    NodeRef next_of(NodeRef r) const noexcept { return next[r.index()]; }

    HeapConfig with_next(std::size_t i, NodeRef r) const
    {
        HeapConfig h = *this;
        h.next[i] = r;
        return h;
    }

    HeapConfig with_handle(std::size_t i, std::uint32_t v) const
    {
        HeapConfig h = *this;
        h.handle[i] = v;
        return h;
    }

    HeapConfig with_alloc_idx(std::size_t k) const
    {
        HeapConfig h = *this;
        h.n_allocated = k;
        return h;
    }

    MemorySnapshot to_snapshot() const
    {
        std::vector<Node> cells(cap);
        for (std::size_t i = 0; i < cap; ++i) {
            cells[i].handle = handle[i];
            cells[i].next = next[i];
        }
        return MemorySnapshot(n_allocated, std::move(cells));
    }

    friend bool operator==(const HeapConfig&, const HeapConfig&) = default;

    friend std::ostream& operator<<(std::ostream& os, const HeapConfig& h)
    {
        os << "cap=" << h.cap << " n=" << h.n_allocated << " next=[";
        for (std::size_t i = 0; i < h.cap; ++i)
            os << (i ? "," : "") << h.next[i];
        os << "] handle=[";
        for (std::size_t i = 0; i < h.cap; ++i)
            os << (i ? "," : "") << h.handle[i];
        return os << ']';
    }
};

namespace detail {

inline void check_max_nodes(std::size_t max_nodes)
{
    if (max_nodes < 1 || max_nodes > kMaxHeapNodes)
        throw std::invalid_argument("max_nodes must be in [1, 6]");
}

constexpr std::uint64_t ipow(std::uint64_t base, std::size_t exp)
{
    std::uint64_t r = 1;
    while (exp--)
        r *= base;
    return r;
}

/// Heaps with exactly n allocated cells: (n+1)^n next maps times 2^n handle maps.
constexpr std::uint64_t level_count(std::size_t n)
{
    return ipow(n + 1, n) * ipow(2, n);
}

} // namespace detail

/// Sum over n = 0..max_nodes of (n+1)^n * 2^n.
inline std::uint64_t heap_count(std::size_t max_nodes)
{
    detail::check_max_nodes(max_nodes);
    std::uint64_t total = 0;
    for (std::size_t n = 0; n <= max_nodes; ++n)
        total += detail::level_count(n);
    return total;
}

/// The i-th heap of the enumeration, ordered by allocated count, then by a
/// mixed-radix code (next map in base n+1, handles as bits).
inline HeapConfig heap_at(std::size_t max_nodes, std::uint64_t i)
{
    detail::check_max_nodes(max_nodes);
    HeapConfig h;
    h.cap = max_nodes;
    std::size_t n = 0;
    while (i >= detail::level_count(n)) {
        i -= detail::level_count(n);
        if (++n > max_nodes)
            throw std::out_of_range("heap index past the enumeration");
    }
    h.n_allocated = n;
    for (std::size_t c = 0; c < n; ++c, i >>= 1)
        h.handle[c] = static_cast<std::uint32_t>(i & 1u);
    for (std::size_t c = 0; c < n; ++c, i /= n + 1) {
        const std::size_t digit = i % (n + 1);
        h.next[c] = digit == 0 ? kNil : NodeRef::at(digit - 1);
    }
    return h;
}

/// Lazy view over every heap with at most `max_nodes` cells, each exactly once.
inline auto enumerate_heaps(std::size_t max_nodes)
{
    const std::uint64_t count = heap_count(max_nodes);
    return std::views::iota(std::uint64_t{0}, count) |
           std::views::transform([max_nodes](std::uint64_t i) { return heap_at(max_nodes, i); });
}

enum class Variant { sound, mutant };

struct Counterexample
{
    HeapConfig heap;
    std::string binding;
};

/// Collects falsifying bindings. Only the first few are kept verbatim.
class Findings
{
public:
    static constexpr std::size_t kMaxSamples = 8;

    template <class Describe>
    void add(const HeapConfig& heap, Describe&& describe)
    {
        ++count_;
        if (samples_.size() < kMaxSamples) {
            std::ostringstream os;
            describe(os);
            samples_.push_back({heap, os.str()});
        }
    }

    void merge(const Findings& other)
    {
        count_ += other.count_;
        for (const auto& s : other.samples_)
            if (samples_.size() < kMaxSamples)
                samples_.push_back(s);
    }

    std::uint64_t count() const noexcept { return count_; }
    const std::vector<Counterexample>& samples() const noexcept { return samples_; }

private:
    std::uint64_t count_ = 0;
    std::vector<Counterexample> samples_;
};

/// Per-capacity binding domains, shared by every heap of that capacity.
class Universe
{
public:
    explicit Universe(std::size_t cap) : cap_(cap)
    {
        refs_.push_back(kNil);
        for (std::size_t i = 0; i < cap; ++i) {
            cells_.push_back(NodeRef::at(i));
            refs_.push_back(NodeRef::at(i));
        }

        // All sequences over the cells, by nondecreasing length, up to cap+1.
        lists_.emplace_back();
        upto_.push_back(1);
        std::size_t level_begin = 0;
        for (std::size_t len = 1; len <= cap + 1; ++len) {
            const std::size_t level_end = lists_.size();
            for (std::size_t j = level_begin; j < level_end; ++j)
                for (NodeRef c : cells_) {
                    LogicList l = lists_[j];
                    l.push_back(c);
                    lists_.push_back(std::move(l));
                }
            level_begin = level_end;
            upto_.push_back(lists_.size());
        }

        locations_.push_back(Location::context(0));
        locations_.push_back(Location::slot(0));
        for (std::size_t i = 0; i < cap; ++i)
            locations_.push_back(Location::bank_cell(i));
    }

    std::size_t capacity() const noexcept { return cap_; }
    std::span<const NodeRef> refs() const noexcept { return refs_; }
    std::span<const NodeRef> cells() const noexcept { return cells_; }
    std::span<const Location> locations() const noexcept { return locations_; }

    /// Every sequence of at most `len` cells (with repeats).
    std::span<const LogicList> lists_upto(std::size_t len) const
    {
        return std::span<const LogicList>(lists_).first(upto_[std::min(len, cap_ + 1)]);
    }

private:
    std::size_t cap_;
    std::vector<NodeRef> refs_;
    std::vector<NodeRef> cells_;
    std::vector<LogicList> lists_;
    std::vector<std::size_t> upto_;
    std::vector<Location> locations_;
};

/// Everything a lemma quantifies over for one heap.
///
/// `linked(b, e)` holds every candidate list ll with linked_ll(heap, b, e, ll),
/// found by testing all sequences of length <= n_allocated + 1. It is built
/// from the predicate alone, never from to_ll.
class HeapScope
{
public:
    explicit HeapScope(const Universe& u) : u_(&u) {}

    void reset(const HeapConfig& heap)
    {
        heap_ = heap;
        const auto refs = u_->refs();
        const auto candidates = u_->lists_upto(heap.n_allocated + 1);
        linked_.assign(refs.size() * refs.size(), {});
        for (std::size_t b = 0; b < refs.size(); ++b)
            for (std::size_t e = 0; e < refs.size(); ++e) {
                auto& out = linked_[b * refs.size() + e];
                for (const LogicList& c : candidates)
                    if (linked_ll(heap, refs[b], refs[e], c))
                        out.push_back(&c);
            }

        variants_.clear();
        single_field_mutations(heap, variants_);
    }

    const HeapConfig& heap() const noexcept { return heap_; }
    const Universe& universe() const noexcept { return *u_; }
    std::span<const NodeRef> refs() const noexcept { return u_->refs(); }

    std::span<const LogicList* const> linked(std::size_t b, std::size_t e) const
    {
        return linked_[b * u_->refs().size() + e];
    }

    /// The heap itself plus every heap differing in exactly one field of one
    /// cell (next or handle) or in the allocation cursor.
    std::span<const HeapConfig> variants() const noexcept { return variants_; }

    static void single_field_mutations(const HeapConfig& h, std::vector<HeapConfig>& out)
    {
        out.push_back(h);
        for (std::size_t i = 0; i < h.cap; ++i) {
            if (h.next[i] != kNil)
                out.push_back(h.with_next(i, kNil));
            for (std::size_t j = 0; j < h.cap; ++j)
                if (h.next[i] != NodeRef::at(j))
                    out.push_back(h.with_next(i, NodeRef::at(j)));
            out.push_back(h.with_handle(i, h.handle[i] ^ 1u));
        }
        for (std::size_t k = 0; k <= h.cap; ++k)
            if (k != h.n_allocated)
                out.push_back(h.with_alloc_idx(k));
    }

private:
    const Universe* u_;
    HeapConfig heap_;
    std::vector<std::vector<const LogicList*>> linked_;
    std::vector<HeapConfig> variants_;
};

namespace lemmas {

inline bool pairwise_distinct(std::span<const NodeRef> ll)
{
    for (std::size_t i = 0; i < ll.size(); ++i)
        for (std::size_t j = i + 1; j < ll.size(); ++j)
            if (ll[i] == ll[j])
                return false;
    return true;
}

inline bool contains(std::span<const NodeRef> ll, NodeRef r)
{
    return std::ranges::find(ll, r) != ll.end();
}

inline LogicList concat(std::span<const NodeRef> a, std::span<const NodeRef> b)
{
    LogicList out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// linked_ll(m,b,e,ll) <=> to_ll(m,b,e) = ll with distinct allocated elements.
// Mutant: forgets the allocation requirement on the right-hand side.
inline void correspond(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t e = 0; e < refs.size(); ++e) {
            const auto image = to_ll(m, refs[b], refs[e]);
            bool rhs = image.has_value() && pairwise_distinct(*image);
            if (rhs && v == Variant::sound)
                rhs = std::ranges::all_of(*image, [&](NodeRef r) { return allocated(m, r); });
            const auto linked = s.linked(b, e);
            const bool lhs_on_image =
                image && std::ranges::any_of(linked, [&](const LogicList* l) { return *l == *image; });
            const bool lhs_elsewhere = std::ranges::any_of(
                linked, [&](const LogicList* l) { return !image || *l != *image; });
            if (lhs_on_image != rhs || lhs_elsewhere)
                f.add(m, [&](std::ostream& os) {
                    os << "b=" << refs[b] << " e=" << refs[e] << " to_ll=";
                    if (image)
                        os << std::span<const NodeRef>(*image);
                    else
                        os << "cycle";
                });
        }
}

// linked(b,e,l1++l2), l2 = q::_ => linked(b,q,l1) and linked(q,e,l2).
// Mutant: claims linked(b,q,l1++l2).
inline void split(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t e = 0; e < refs.size(); ++e)
            for (const LogicList* ll : s.linked(b, e))
                for (std::size_t k = 0; k < ll->size(); ++k) {
                    const std::span<const NodeRef> whole(*ll);
                    const auto l1 = whole.first(k);
                    const auto l2 = whole.subspan(k);
                    const NodeRef q = l2.front();
                    const bool ok = v == Variant::sound
                                        ? linked_ll(m, refs[b], q, l1) && linked_ll(m, q, refs[e], l2)
                                        : linked_ll(m, refs[b], q, whole);
                    if (!ok)
                        f.add(m, [&](std::ostream& os) {
                            os << "b=" << refs[b] << " e=" << refs[e] << " q=" << q << " ll=" << whole;
                        });
                }
}

// linked(b,q,l1), linked(q,e,l2), l1 separated from l2 and from e
//   => linked(b,e,l1++l2).
// Mutant: drops the separation guard.
inline void merge(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t q = 0; q < refs.size(); ++q)
            for (std::size_t e = 0; e < refs.size(); ++e)
                for (const LogicList* l1 : s.linked(b, q))
                    for (const LogicList* l2 : s.linked(q, e)) {
                        const bool guard =
                            !contains(*l1, refs[e]) &&
                            std::ranges::none_of(*l1, [&](NodeRef r) { return contains(*l2, r); });
                        if (v == Variant::sound && !guard)
                            continue;
                        const LogicList joined = concat(*l1, *l2);
                        if (!linked_ll(m, refs[b], refs[e], joined))
                            f.add(m, [&](std::ostream& os) {
                                os << "b=" << refs[b] << " q=" << refs[q] << " e=" << refs[e]
                                   << " l1=" << std::span<const NodeRef>(*l1)
                                   << " l2=" << std::span<const NodeRef>(*l2);
                            });
                    }
}

// linked(s1,b,e,ll) and unchanged(s1,s2,ll) => linked(s2,b,e,ll).
// Mutant: drops the unchanged_ll hypothesis.
inline void stable(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t e = 0; e < refs.size(); ++e)
            for (const LogicList* ll : s.linked(b, e))
                for (const HeapConfig& s2 : s.variants()) {
                    if (v == Variant::sound && !unchanged_ll(m, s2, *ll))
                        continue;
                    if (!linked_ll(s2, refs[b], refs[e], *ll))
                        f.add(m, [&](std::ostream& os) {
                            os << "b=" << refs[b] << " e=" << refs[e]
                               << " ll=" << std::span<const NodeRef>(*ll) << " s2={" << s2 << '}';
                        });
                }
}

// unchanged(s1,s2,ll) and unchanged(s2,s3,ll) => unchanged(s1,s3,ll).
// Mutant: drops the second hypothesis.
inline void unchanged_trans(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    std::vector<const LogicList*> lists;
    for (const LogicList& l : s.universe().lists_upto(2))
        lists.push_back(&l);
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t e = 0; e < refs.size(); ++e)
            for (const LogicList* l : s.linked(b, e))
                if (l->size() > 2)
                    lists.push_back(l);

    std::vector<HeapConfig> thirds;
    for (const HeapConfig& s2 : s.variants()) {
        thirds.clear();
        HeapScope::single_field_mutations(s2, thirds);
        for (const LogicList* ll : lists) {
            if (!unchanged_ll(m, s2, *ll))
                continue;
            for (const HeapConfig& s3 : thirds) {
                if (v == Variant::sound && !unchanged_ll(s2, s3, *ll))
                    continue;
                if (!unchanged_ll(m, s3, *ll))
                    f.add(m, [&](std::ostream& os) {
                        os << "ll=" << std::span<const NodeRef>(*ll) << " s2={" << s2 << "} s3={" << s3
                           << '}';
                    });
            }
        }
    }
}

// r allocated, r separated from ll and from e, next(r) = b, linked(b,e,ll)
//   => linked(r,e,r::ll).
// Mutant: drops the separation guard on r.
inline void cons_head(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    const auto refs = s.refs();
    for (NodeRef r : s.universe().cells()) {
        if (!allocated(m, r))
            continue;
        const NodeRef b = m.next_of(r);
        const std::size_t bi = b.is_nil() ? 0 : b.index() + 1;
        for (std::size_t e = 0; e < refs.size(); ++e)
            for (const LogicList* ll : s.linked(bi, e)) {
                const bool guard = r != refs[e] && !contains(*ll, r);
                if (v == Variant::sound && !guard)
                    continue;
                const LogicList consed = concat(std::span<const NodeRef>(&r, 1), *ll);
                if (!linked_ll(m, r, refs[e], consed))
                    f.add(m, [&](std::ostream& os) {
                        os << "r=" << r << " b=" << b << " e=" << refs[e]
                           << " ll=" << std::span<const NodeRef>(*ll);
                    });
            }
    }
}

// linked(b,e,ll) => elements of ll pairwise distinct.
// Mutant: negated conclusion.
inline void distinct(const HeapScope& s, Variant v, Findings& f)
{
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t e = 0; e < refs.size(); ++e)
            for (const LogicList* ll : s.linked(b, e))
                if (pairwise_distinct(*ll) != (v == Variant::sound))
                    f.add(s.heap(), [&](std::ostream& os) {
                        os << "b=" << refs[b] << " e=" << refs[e]
                           << " ll=" << std::span<const NodeRef>(*ll);
                    });
}

// sep(loc, r::ll) <=> separated(loc, cell r) and sep(loc, ll).
// Mutant: forgets the head on the right-hand side.
inline void sep_cons(const HeapScope& s, Variant v, Findings& f)
{
    for (const Location& loc : s.universe().locations())
        for (NodeRef r : s.universe().cells())
            for (const LogicList& ll : s.universe().lists_upto(2)) {
                const LogicList consed = concat(std::span<const NodeRef>(&r, 1), ll);
                const bool lhs = sep_from_list(loc, consed);
                const bool head = v == Variant::mutant || separated(loc, Location::bank_cell(r));
                const bool rhs = head && sep_from_list(loc, ll);
                if (lhs != rhs)
                    f.add(s.heap(), [&](std::ostream& os) {
                        os << "loc=" << loc << " r=" << r << " ll=" << std::span<const NodeRef>(ll);
                    });
            }
}

// linked(b,e,ll) => every element allocated, head = b, next(last) = e.
// Mutant: claims next(last) = nil.
inline void nth_bounds(const HeapScope& s, Variant v, Findings& f)
{
    const auto& m = s.heap();
    const auto refs = s.refs();
    for (std::size_t b = 0; b < refs.size(); ++b)
        for (std::size_t e = 0; e < refs.size(); ++e)
            for (const LogicList* ll : s.linked(b, e)) {
                bool ok = std::ranges::all_of(*ll, [&](NodeRef r) { return allocated(m, r); });
                if (!ll->empty()) {
                    const NodeRef tail_next = m.next_of(ll->back());
                    ok = ok && ll->front() == refs[b] &&
                         tail_next == (v == Variant::sound ? refs[e] : kNil);
                }
                if (!ok)
                    f.add(m, [&](std::ostream& os) {
                        os << "b=" << refs[b] << " e=" << refs[e]
                           << " ll=" << std::span<const NodeRef>(*ll);
                    });
            }
}

} // namespace lemmas

struct Lemma
{
    std::string_view name;
    std::string_view statement;
    void (*check)(const HeapScope&, Variant, Findings&);
};

/// Registered lemmas, in report order. New lemmas are added here.
inline std::span<const Lemma> lemma_registry()
{
    static const Lemma registry[] = {
        {"L-correspond", "linked_ll(m,b,e,ll) <=> to_ll(m,b,e)=ll, distinct, allocated",
         lemmas::correspond},
        {"L-split", "linked_ll(m,b,e,l1++l2), l2=q::_ => linked_ll(m,b,q,l1) & linked_ll(m,q,e,l2)",
         lemmas::split},
        {"L-merge", "linked_ll(m,b,q,l1) & linked_ll(m,q,e,l2) & sep(l1,l2++[e]) => linked_ll(m,b,e,l1++l2)",
         lemmas::merge},
        {"L-stable", "linked_ll(s1,b,e,ll) & unchanged_ll(s1,s2,ll) => linked_ll(s2,b,e,ll)",
         lemmas::stable},
        {"L-unchanged-trans", "unchanged_ll(s1,s2,ll) & unchanged_ll(s2,s3,ll) => unchanged_ll(s1,s3,ll)",
         lemmas::unchanged_trans},
        {"L-cons-head", "r allocated, r sep from ll++[e], next(r)=b, linked_ll(m,b,e,ll) => linked_ll(m,r,e,r::ll)",
         lemmas::cons_head},
        {"L-distinct", "linked_ll(m,b,e,ll) => ll pairwise distinct", lemmas::distinct},
        {"L-sep-cons", "sep_from_list(loc,r::ll) <=> separated(loc,r) & sep_from_list(loc,ll)",
         lemmas::sep_cons},
        {"L-nth-bounds", "linked_ll(m,b,e,ll) => all allocated, head b, next(last)=e",
         lemmas::nth_bounds},
    };
    return registry;
}

inline const Lemma& find_lemma(std::string_view name)
{
    for (const Lemma& l : lemma_registry())
        if (l.name == name)
            return l;
    throw std::invalid_argument("unknown lemma: " + std::string(name));
}

/// Evaluate one lemma over every binding within one heap.
inline bool check_lemma(std::string_view name, const HeapConfig& heap,
                        Variant variant = Variant::sound, Findings* findings = nullptr)
{
    const Lemma& lemma = find_lemma(name);
    const Universe u(heap.cap);
    HeapScope scope(u);
    scope.reset(heap);
    Findings local;
    lemma.check(scope, variant, findings ? *findings : local);
    return (findings ? *findings : local).count() == 0;
}

struct LemmaReport
{
    std::string name;
    std::uint64_t configs_checked = 0;
    std::uint64_t counterexample_count = 0;
    std::vector<Counterexample> counterexamples; // first few only
    double elapsed_ms = 0;

    bool passed() const noexcept { return counterexample_count == 0; }
};

/// Run every registered lemma over every heap with at most `max_nodes` cells.
///
/// Heaps are split into contiguous ranges, one per worker; results are merged
/// in range order, so reports do not depend on the thread count (apart from
/// elapsed_ms, which is the time spent inside that lemma's checks).
inline std::vector<LemmaReport> run_suite(std::size_t max_nodes, Variant variant = Variant::sound,
                                          unsigned threads = 0)
{
    const std::uint64_t total = heap_count(max_nodes);
    const auto lemmas = lemma_registry();
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

    struct Partial
    {
        std::vector<Findings> findings;
        std::vector<double> ms;
    };
    std::vector<Partial> partials(threads);
    const Universe universe(max_nodes);

    auto work = [&](unsigned t) {
        Partial& p = partials[t];
        p.findings.resize(lemmas.size());
        p.ms.assign(lemmas.size(), 0.0);
        HeapScope scope(universe);
        const std::uint64_t lo = total * t / threads;
        const std::uint64_t hi = total * (t + 1) / threads;
        for (std::uint64_t i = lo; i < hi; ++i) {
            scope.reset(heap_at(max_nodes, i));
            for (std::size_t k = 0; k < lemmas.size(); ++k) {
                const auto start = std::chrono::steady_clock::now();
                lemmas[k].check(scope, variant, p.findings[k]);
                p.ms[k] += std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
    }

    std::vector<LemmaReport> reports;
    for (std::size_t k = 0; k < lemmas.size(); ++k) {
        Findings merged;
        LemmaReport r;
        r.name = std::string(lemmas[k].name);
        r.configs_checked = total;
        for (const Partial& p : partials) {
            merged.merge(p.findings[k]);
            r.elapsed_ms += p.ms[k];
        }
        r.counterexample_count = merged.count();
        r.counterexamples = merged.samples();
        reports.push_back(std::move(r));
    }
    return reports;
}

} // namespace esapi_model
