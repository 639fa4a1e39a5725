#pragma once

#include "esapi_model/contract.hpp"
#include "esapi_model/logic_lists.hpp"
#include "esapi_model/marshal.hpp"
#include "esapi_model/memory_model.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

namespace esapi_model {

enum class ReturnCode : int {
    found = 616,
    ok_create = 616, // createNode success shares the lookup success code
    memory = 833,
    marshal_fail = 900,
    created = 1611,
};

constexpr int to_int(ReturnCode rc) noexcept { return static_cast<int>(rc); }

/// Simplified ESAPI context: one scalar plus the head of the resource list.
struct Context
{
    std::int32_t field0 = 0;
    NodeRef rsrc_list;

    friend bool operator==(const Context&, const Context&) = default;
};

/// An out-parameter cell (`NODE_T **`). Slots are their own location class
/// and never alias bank cells.
struct Slot
{
    std::size_t id = 0;
    NodeRef content;

    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Resource handle to TPM handle. The real conversion is not modeled; this is
/// an arbitrary injective involution.
constexpr std::uint32_t handle_to_tpm(std::uint32_t handle) noexcept
{
    return handle ^ 0x80000000u;
}

namespace detail {

inline LogicList require_list(const Bank& bank, const Context& ctx)
{
    auto ll = to_ll(bank, ctx.rsrc_list, kNil);
    require(ll.has_value(), "resource list does not reach nil");
    return *std::move(ll);
}

inline void require_fresh(const Bank& bank, const LogicList& ll, const Slot& out)
{
    require(is_fresh_free(bank, ll), "list element inside the allocable region");
    require(is_fresh_free(bank, {out.content}), "out slot points into the allocable region");
}

} // namespace detail

/// Allocate a node for `handle` and push it as the new list head.
///
/// On exhaustion returns ReturnCode::memory and touches nothing.
inline ReturnCode create_node(Bank& bank, Context& ctx, std::uint32_t handle, Slot& out)
{
    require(valid_bank(bank), "invalid bank");
    const LogicList ll = detail::require_list(bank, ctx);
    detail::require_fresh(bank, ll, out);

    const NodeRef r = bank.calloc_node();
    if (r.is_nil())
        return ReturnCode::memory;

    Node& n = bank.cell(r);
    n.handle = handle;
    n.next = ctx.rsrc_list;
    ctx.rsrc_list = r;
    out.content = r;
    return ReturnCode::ok_create;
}

/// Search the context's resource list for `handle`; create it when absent.
///
///  - found:   out = first node with that handle, returns 616
///  - created: new head whose name holds the marshaled TPM handle, returns 1611
///  - memory:  bank exhausted, nothing modified, returns 833
///
/// The list must be well-formed on entry and must not reach into the
/// allocable part of the bank; violations throw ContractError.
inline ReturnCode get_node(Bank& bank, Context& ctx, std::uint32_t handle, Slot& out)
{
    require(valid_bank(bank), "invalid bank");
    const LogicList ll = detail::require_list(bank, ctx);
    require(linked_ll(bank, ctx.rsrc_list, kNil, ll), "resource list is not linked");
    detail::require_fresh(bank, ll, out);

    for (NodeRef cur = ctx.rsrc_list; !cur.is_nil(); cur = bank.next_of(cur)) {
        if (bank.cell(cur).handle == handle) {
            out.content = cur;
            return ReturnCode::found;
        }
    }

    const std::uint32_t tpm = handle_to_tpm(handle);
    Slot fresh{out.id, kNil};
    if (create_node(bank, ctx, handle, fresh) != ReturnCode::ok_create)
        return ReturnCode::memory;

    Resource& rsrc = bank.cell(fresh.content).rsrc;
    std::size_t offset = 0;
    if (marshal_u32(tpm, rsrc.name, offset) != MarshalStatus::success)
        return ReturnCode::marshal_fail;
    rsrc.name_size = static_cast<std::uint32_t>(offset);

    out.content = fresh.content;
    return ReturnCode::created;
}

/// Store state captured right before a call, for checking postconditions.
struct EntryState
{
    MemorySnapshot mem;
    Context ctx;
    Slot out;
};

inline EntryState capture(const Bank& bank, const Context& ctx, const Slot& out)
{
    return EntryState{bank.snapshot(), ctx, out};
}

/// Store-wide invariants that must hold between any two calls: valid bank,
/// linked list to nil, and every known ref outside the allocable region.
/// Returns a description of the first violation.
inline std::optional<std::string> check_store(const Bank& bank, const Context& ctx,
                                              const Slot& out)
{
    if (!valid_bank(bank))
        return "valid_bank violated";
    const auto ll = to_ll(bank, ctx.rsrc_list, kNil);
    if (!ll)
        return "resource list does not reach nil";
    if (!linked_ll(bank, ctx.rsrc_list, kNil, *ll))
        return "linked_ll violated on resource list";
    if (!is_fresh_free(bank, *ll) || !is_fresh_free(bank, {out.content}))
        return "freshness violated";
    if (!sep_from_list(Location::slot(out.id), *ll) || !sep_from_list(Location::context(0), *ll))
        return "slot or context aliases the list";
    return std::nullopt;
}

/// Full postcondition of get_node, evaluated from the entry snapshot and the
/// exit state. The expected behavior is derived from the entry state alone,
/// so the check also covers disjointness and completeness of the behaviors.
inline std::optional<std::string> check_get_node(const EntryState& entry, const Bank& bank,
                                                 const Context& ctx, const Slot& out,
                                                 std::uint32_t handle, ReturnCode rc)
{
    if (auto bad = check_store(bank, ctx, out))
        return bad;

    const auto before = to_ll(entry.mem, entry.ctx.rsrc_list, kNil);
    const auto after = to_ll(bank, ctx.rsrc_list, kNil);
    if (!before)
        return "entry list was not well-formed";

    const auto match = std::ranges::find_if(
        *before, [&](NodeRef r) { return entry.mem.cell(r).handle == handle; });
    const bool has_room = entry.mem.alloc_idx() < entry.mem.capacity();

    auto fail = [&](const char* what) {
        std::ostringstream os;
        os << what << " (handle " << handle << ", rc " << to_int(rc) << ")";
        return std::optional<std::string>(os.str());
    };

    if (match != before->end()) {
        if (rc != ReturnCode::found)
            return fail("expected found behavior");
        if (out.content != *match)
            return fail("found: out is not the first matching node");
        if (*after != *before)
            return fail("found: list shape changed");
        if (!unchanged_ll(entry.mem, bank, *before))
            return fail("found: unchanged_ll violated");
        if (bank.snapshot() != entry.mem || ctx != entry.ctx)
            return fail("found: state modified");
    } else if (has_room) {
        if (rc != ReturnCode::created)
            return fail("expected created behavior");
        if (out.content.is_nil() || out.content.index() != entry.mem.alloc_idx())
            return fail("created: out is not the first allocable cell");
        if (bank.alloc_idx() != entry.mem.alloc_idx() + 1)
            return fail("created: cursor did not advance by one");
        LogicList expected{out.content};
        expected.insert(expected.end(), before->begin(), before->end());
        if (*after != expected)
            return fail("created: old head is not the second element");
        if (!linked_ll(bank, ctx.rsrc_list, kNil, expected))
            return fail("created: new list is not linked");
        if (!unchanged_ll(entry.mem, bank, *before))
            return fail("created: old elements changed");
        const Node& n = bank.cell(out.content);
        std::array<std::uint8_t, 4> name{};
        const std::uint32_t tpm = handle_to_tpm(handle);
        for (std::size_t k = 0; k < 4; ++k)
            name[k] = static_cast<std::uint8_t>(tpm >> (8 * (3 - k)));
        if (n.handle != handle || n.rsrc.name_size != 4 ||
            !std::equal(name.begin(), name.end(), n.rsrc.name.begin()))
            return fail("created: new node content");
        for (std::size_t i = 0; i < entry.mem.capacity(); ++i)
            if (i != out.content.index() && bank.cells()[i] != entry.mem.cells()[i])
                return fail("created: frame violated");
    } else {
        if (rc != ReturnCode::memory)
            return fail("expected memory-failure behavior");
        if (bank.snapshot() != entry.mem || ctx != entry.ctx || out != entry.out)
            return fail("memory: state modified");
    }
    return std::nullopt;
}

} // namespace esapi_model
