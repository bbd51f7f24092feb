#include <gtest/gtest.h>

#include "orbitcsp/identities.hpp"

using namespace orbitcsp;

namespace {

OpTable majority() {
  return OpTable::from(2, [](int x, int y, int z) { return (x + y + z) >= 2 ? 1 : 0; });
}
OpTable minority() {
  return OpTable::from(2, [](int x, int y, int z) { return x ^ y ^ z; });
}
OpTable first() {
  return OpTable::from(2, [](int x, int, int) { return x; });
}
OpTable third() {
  return OpTable::from(2, [](int, int, int z) { return z; });
}
OpTable discriminator(int n) {
  return OpTable::from(n, [](int x, int y, int z) { return x == y ? z : x; });
}

}  // namespace

TEST(VerifyChain, MajorityIsJonsson) {
  EXPECT_TRUE(verify_chain({{majority()}, ChainKind::Jonsson}));
  EXPECT_TRUE(verify_chain({{majority()}, ChainKind::DirectedJonsson}));
}

TEST(VerifyChain, ProjectionsFailAtKnownIdentities) {
  auto a = verify_chain({{first()}, ChainKind::Jonsson});
  EXPECT_FALSE(a);
  EXPECT_EQ(a.equation, 5);
  EXPECT_EQ(a.index, 1);
  EXPECT_EQ(a.x, 0);
  EXPECT_EQ(a.y, 1);
  auto b = verify_chain({{third()}, ChainKind::Jonsson});
  EXPECT_FALSE(b);
  EXPECT_EQ(b.equation, 1);
  EXPECT_EQ(b.index, 1);
}

TEST(VerifyChain, DiscriminatorIsPixley) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(verify_chain({{discriminator(n)}, ChainKind::Pixley})) << n;
  EXPECT_FALSE(verify_chain({{majority()}, ChainKind::Pixley}));
}

TEST(VerifyChain, LongerJonssonChain) {
  EXPECT_TRUE(verify_chain({{first(), discriminator(2), third()}, ChainKind::Jonsson}));
  EXPECT_FALSE(verify_chain({{first(), majority(), third()}, ChainKind::Jonsson}));
  auto bad = verify_chain({{first(), minority(), third()}, ChainKind::Jonsson});
  EXPECT_FALSE(bad);
  EXPECT_EQ(bad.equation, 2);
  EXPECT_EQ(bad.index, 2);
}

TEST(VerifyChain, Errors) {
  EXPECT_THROW(verify_chain({{}, ChainKind::Jonsson}), InputError);
  EXPECT_THROW(verify_chain({{majority(), majority()}, ChainKind::Jonsson}), InputError);
  EXPECT_THROW(verify_chain({{majority(), discriminator(3)}, ChainKind::Pixley}), InputError);
  EXPECT_THROW(OpTable(2, {0, 1}), InputError);
  EXPECT_THROW(OpTable(2, {0, 0, 0, 0, 0, 0, 0, 2}), InputError);
}

TEST(VerifyChain, QuasiAllowsNonIdempotentDiagonal) {
  // negated majority: identities hold relative to J(x,x,x) = 1 - x
  auto neg = OpTable::from(2, [](int x, int y, int z) { return (x + y + z) >= 2 ? 0 : 1; });
  EXPECT_TRUE(verify_chain({{neg}, ChainKind::Jonsson}));
}

TEST(Preserves, Examples) {
  std::vector<std::vector<int>> neq{{0, 1}, {1, 0}};
  std::vector<std::vector<int>> leq{{0, 0}, {0, 1}, {1, 1}};
  std::vector<std::vector<int>> odd{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  EXPECT_TRUE(preserves(majority(), neq));
  EXPECT_TRUE(preserves(majority(), leq));
  EXPECT_FALSE(preserves(minority(), leq));
  EXPECT_FALSE(preserves(majority(), odd));
  EXPECT_TRUE(preserves(minority(), odd));
  for (const auto* r : {&neq, &leq, &odd}) EXPECT_TRUE(preserves(first(), *r));
  EXPECT_TRUE(preserves(majority(), {}));
}

TEST(Preserves, Errors) {
  EXPECT_THROW(preserves(majority(), {{0, 1}, {0}}), InputError);
  EXPECT_THROW(preserves(majority(), {{0, 2}}), InputError);
}

TEST(Preserves, ClosedUnderComposition) {
  // f(g(x,y,z), g(y,z,x), g(z,x,y)) keeps every relation both keep
  std::vector<std::vector<int>> leq{{0, 0}, {0, 1}, {1, 1}};
  auto f = majority();
  auto g = majority();
  auto h = OpTable::from(2, [&](int x, int y, int z) { return f(g(x, y, z), g(y, z, x), g(z, x, y)); });
  EXPECT_TRUE(preserves(h, leq));
}

TEST(Idempotentize, AlreadyIdempotent) {
  OpChain c{{majority()}, ChainKind::Jonsson};
  auto r = idempotentize(c, {0, 1}, {{0, 1}});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.chain.ops, c.ops);
}

TEST(Idempotentize, TranspositionDiagonal) {
  auto neg = OpTable::from(2, [](int x, int y, int z) { return (x + y + z) >= 2 ? 0 : 1; });
  OpChain c{{neg}, ChainKind::Jonsson};
  auto r = idempotentize(c, {0, 1}, {{0, 1}, {1, 0}});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.chain.ops[0], majority());
  EXPECT_TRUE(verify_chain(r.chain));
  for (int b : {0, 1}) EXPECT_EQ(r.chain.ops[0](b, b, b), b);
}

TEST(Idempotentize, OnASubset) {
  // diagonal on [3] swaps 0 and 1 and fixes 2; only B = {0,1} must come out fixed
  auto op = OpTable::from(3, [](int x, int y, int z) {
    int d = x == y ? x : (x == z ? x : (y == z ? y : x));
    return d == 2 ? 2 : 1 - d;
  });
  OpChain c{{op}, ChainKind::Jonsson};
  ASSERT_TRUE(verify_chain(c));
  auto r = idempotentize(c, {0, 1}, {{0, 1, 2}, {1, 0, 2}});
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(verify_chain(r.chain));
  for (int b : {0, 1}) EXPECT_EQ(r.chain.ops[0](b, b, b), b);
}

TEST(Idempotentize, Failures) {
  auto neg = OpTable::from(2, [](int x, int y, int z) { return (x + y + z) >= 2 ? 0 : 1; });
  OpChain c{{majority(), neg, majority()}, ChainKind::Jonsson};
  EXPECT_EQ(idempotentize(c, {0, 1}, {}).failed, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(idempotentize(c, {0, 1}, {{0, 1}}).failed, (std::vector<int>{2}));
  EXPECT_THROW(idempotentize(c, {0, 1}, {{0, 0}}), PreconditionError);
  EXPECT_THROW(idempotentize(c, {2}, {{0, 1}}), InputError);
}

TEST(Enumerate, LengthOneJonssonMatchesADoubleLoop) {
  // every one of the 256 tables, identities written out by hand
  std::uint64_t expected = 0;
  for (int code = 0; code < 256; ++code) {
    auto j = [&](int x, int y, int z) { return (code >> ((x * 2 + y) * 2 + z)) & 1; };
    bool ok = true;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        ok = ok && j(x, x, y) == j(x, x, x);
        ok = ok && j(x, y, x) == j(x, x, x);
        ok = ok && j(x, y, y) == j(y, y, y);
      }
    expected += ok;
  }
  auto e = enumerate_chains(2, 1, ChainKind::Jonsson);
  EXPECT_EQ(e.count, expected);
  EXPECT_EQ(e.count, 4u);
  for (const auto& c : e.samples) EXPECT_TRUE(verify_chain(c));
}

TEST(Enumerate, PixleyLengthOne) {
  auto e = enumerate_chains(2, 1, ChainKind::Pixley, 16);
  auto has = [&](const OpTable& t) {
    return std::any_of(e.samples.begin(), e.samples.end(), [&](const OpChain& c) { return c.ops[0] == t; });
  };
  EXPECT_TRUE(has(discriminator(2)));
  EXPECT_FALSE(has(majority()));
}

TEST(Enumerate, SingletonDomain) {
  for (auto kind : {ChainKind::Pixley, ChainKind::DirectedJonsson, ChainKind::Jonsson})
    for (int len : {1, 3}) EXPECT_EQ(enumerate_chains(1, len, kind).count, 1u);
}

TEST(Enumerate, Guards) {
  EXPECT_THROW(enumerate_chains(3, 1, ChainKind::Jonsson), BudgetError);
  EXPECT_THROW(enumerate_chains(2, 2, ChainKind::Jonsson), InputError);
  EXPECT_THROW(enumerate_chains(0, 1, ChainKind::Jonsson), InputError);
}

TEST(Padding, DirectedLengthOneIsJonsson) {
  auto e = enumerate_chains(2, 1, ChainKind::DirectedJonsson, 64);
  ASSERT_EQ(e.samples.size(), e.count);
  for (const auto& c : e.samples) EXPECT_TRUE(verify_chain({c.ops, ChainKind::Jonsson}));
}

TEST(Padding, DuplicationDoesNotCarryPixleyChains) {
  // t(x,x,y) = y while a length-1 Jonsson chain needs J(x,x,y) = J(x,x,x)
  OpChain padded{{discriminator(2)}, ChainKind::Jonsson};
  EXPECT_FALSE(verify_chain(padded));
  EXPECT_EQ(verify_chain(padded).equation, 1);
}
