#include "esapi_model/resource_store.hpp"

#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

using namespace esapi_model;

namespace {

std::vector<std::uint32_t> handles(const Bank& bank, const Context& ctx)
{
    std::vector<std::uint32_t> hs;
    const LogicList ll = *to_ll(bank, ctx.rsrc_list, kNil);
    for (NodeRef r : ll)
        hs.push_back(bank.cell(r).handle);
    return hs;
}

} // namespace

TEST(HandleToTpm, Examples)
{
    EXPECT_EQ(handle_to_tpm(0), 0x80000000u);
    EXPECT_EQ(handle_to_tpm(0x80000000u), 0u);

    std::mt19937 rng(11);
    std::unordered_set<std::uint32_t> in, out;
    for (int i = 0; i < 10000; ++i) {
        const std::uint32_t h = rng();
        if (in.insert(h).second) {
            EXPECT_TRUE(out.insert(handle_to_tpm(h)).second);
        }
        EXPECT_EQ(handle_to_tpm(handle_to_tpm(h)), h);
    }
}

TEST(CreateNode, Examples)
{
    Bank bank(4);
    Context ctx;
    Slot out;
    ASSERT_EQ(create_node(bank, ctx, 3, out), ReturnCode::ok_create);
    const NodeRef a = out.content;
    EXPECT_EQ(ctx.rsrc_list, a);
    EXPECT_EQ(*to_ll(bank, ctx.rsrc_list, kNil), LogicList{a});
    EXPECT_EQ(to_int(ReturnCode::ok_create), 616);

    ASSERT_EQ(create_node(bank, ctx, 4, out), ReturnCode::ok_create);
    EXPECT_EQ(*to_ll(bank, ctx.rsrc_list, kNil), (LogicList{out.content, a}));
    EXPECT_EQ(handles(bank, ctx), (std::vector<std::uint32_t>{4, 3}));

    Bank full(1);
    Context c2;
    Slot o2;
    ASSERT_EQ(create_node(full, c2, 1, o2), ReturnCode::ok_create);
    const auto entry = capture(full, c2, o2);
    EXPECT_EQ(create_node(full, c2, 2, o2), ReturnCode::memory);
    EXPECT_EQ(full.snapshot(), entry.mem);
    EXPECT_EQ(c2, entry.ctx);
    EXPECT_EQ(o2, entry.out);
}

TEST(GetNode, FoundReturnsFirstMatchUnchanged)
{
    Bank bank;
    Context ctx;
    Slot out;
    ASSERT_EQ(get_node(bank, ctx, 7, out), ReturnCode::created);
    const NodeRef b = out.content;
    ASSERT_EQ(get_node(bank, ctx, 5, out), ReturnCode::created);
    ASSERT_EQ(handles(bank, ctx), (std::vector<std::uint32_t>{5, 7}));

    const auto entry = capture(bank, ctx, out);
    EXPECT_EQ(get_node(bank, ctx, 7, out), ReturnCode::found);
    EXPECT_EQ(to_int(ReturnCode::found), 616);
    EXPECT_EQ(out.content, b);
    EXPECT_EQ(bank.snapshot(), entry.mem);
    EXPECT_EQ(check_get_node(entry, bank, ctx, out, 7, ReturnCode::found), std::nullopt);
}

TEST(GetNode, CreatedWritesMarshaledTpmName)
{
    Bank bank;
    Context ctx;
    Slot out;
    const auto entry = capture(bank, ctx, out);
    ASSERT_EQ(get_node(bank, ctx, 5, out), ReturnCode::created);
    EXPECT_EQ(to_int(ReturnCode::created), 1611);
    EXPECT_EQ(*to_ll(bank, ctx.rsrc_list, kNil), LogicList{out.content});
    const Node& n = bank.cell(out.content);
    EXPECT_EQ(n.handle, 5u);
    EXPECT_EQ(n.rsrc.name_size, 4u);
    // handle_to_tpm(5) = 0x80000005
    EXPECT_EQ(n.rsrc.name[0], 0x80);
    EXPECT_EQ(n.rsrc.name[1], 0x00);
    EXPECT_EQ(n.rsrc.name[2], 0x00);
    EXPECT_EQ(n.rsrc.name[3], 0x05);
    EXPECT_EQ(n.rsrc.name[4], 0x00);
    EXPECT_EQ(check_get_node(entry, bank, ctx, out, 5, ReturnCode::created), std::nullopt);
}

TEST(GetNode, ExhaustionLeavesEverythingUnchanged)
{
    Bank bank(1);
    Context ctx;
    Slot out;
    ASSERT_EQ(get_node(bank, ctx, 5, out), ReturnCode::created);
    const auto entry = capture(bank, ctx, out);
    EXPECT_EQ(get_node(bank, ctx, 9, out), ReturnCode::memory);
    EXPECT_EQ(to_int(ReturnCode::memory), 833);
    EXPECT_EQ(bank.snapshot(), entry.mem);
    EXPECT_EQ(ctx, entry.ctx);
    EXPECT_EQ(out, entry.out);
    // an existing handle is still found on a full bank
    EXPECT_EQ(get_node(bank, ctx, 5, out), ReturnCode::found);
}

TEST(GetNode, DuplicateHandlesUseFirstMatch)
{
    Bank bank;
    Context ctx;
    Slot out;
    ASSERT_EQ(create_node(bank, ctx, 3, out), ReturnCode::ok_create);
    ASSERT_EQ(create_node(bank, ctx, 3, out), ReturnCode::ok_create);
    const NodeRef head = out.content;
    EXPECT_EQ(get_node(bank, ctx, 3, out), ReturnCode::found);
    EXPECT_EQ(out.content, head);
}

TEST(GetNode, RejectsBrokenPreconditions)
{
    Bank bank(4);
    Context ctx;
    Slot out;
    ASSERT_EQ(create_node(bank, ctx, 1, out), ReturnCode::ok_create);
    bank.cell(ctx.rsrc_list).next = ctx.rsrc_list; // cycle
    EXPECT_THROW(get_node(bank, ctx, 2, out), ContractError);

    Bank b2(4);
    Context c2;
    c2.rsrc_list = NodeRef::at(2); // into the allocable region
    Slot o2;
    EXPECT_THROW(get_node(b2, c2, 1, o2), ContractError);

    Bank b3(4);
    Context c3;
    Slot o3{0, NodeRef::at(1)};
    EXPECT_THROW(get_node(b3, c3, 1, o3), ContractError);
}

TEST(GetNode, LookupIsIdempotent)
{
    std::mt19937 rng(5);
    Bank bank(16);
    Context ctx;
    Slot out;
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t h = rng() % 24;
        const ReturnCode first = get_node(bank, ctx, h, out);
        if (first == ReturnCode::memory)
            continue;
        const NodeRef got = out.content;
        EXPECT_EQ(get_node(bank, ctx, h, out), ReturnCode::found);
        EXPECT_EQ(out.content, got);
    }
}

TEST(GetNode, RandomSequencesSatisfyPostconditions)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t cap = 1 + rng() % 12;
        Bank bank(cap);
        Context ctx{static_cast<std::int32_t>(seed), kNil};
        Slot out{3, kNil};
        for (int i = 0; i < 300; ++i) {
            const std::uint32_t h = static_cast<std::uint32_t>(rng() % (2 * cap));
            const auto entry = capture(bank, ctx, out);
            const ReturnCode rc = get_node(bank, ctx, h, out);
            ASSERT_EQ(check_get_node(entry, bank, ctx, out, h, rc), std::nullopt) << "seed " << seed;
            EXPECT_EQ(ctx.field0, static_cast<std::int32_t>(seed));
        }
    }
}

TEST(CheckGetNode, DetectsWrongBehavior)
{
    Bank bank;
    Context ctx;
    Slot out;
    const auto entry = capture(bank, ctx, out);
    const ReturnCode rc = get_node(bank, ctx, 5, out);
    EXPECT_TRUE(check_get_node(entry, bank, ctx, out, 5, ReturnCode::found).has_value());
    EXPECT_TRUE(check_get_node(entry, bank, ctx, out, 6, rc).has_value());
    bank.cell(out.content).rsrc.name[3] = 0;
    EXPECT_TRUE(check_get_node(entry, bank, ctx, out, 5, rc).has_value());
}
