#include <gtest/gtest.h>

#include <random>

#include "posdiv/residual.hpp"

namespace {

using namespace posdiv;

constexpr int kFb = 10;
const ResidualFormat kFmt{kFb};

// Raw value of num / 2^shift in the kFb format.
i128 fx(std::int64_t num, int shift)
{
    return static_cast<i128>(num) << (kFb - shift);
}

TEST(Init, HalfOrQuarter)
{
    // x = 1.0 given with 4 fraction bits.
    EXPECT_EQ(init_residual(16, 4, DigitSet::radix2(), kFmt, false).value(), fx(1, 1));
    EXPECT_EQ(init_residual(16, 4, DigitSet::radix4(), kFmt, true).value(), fx(1, 2));
    const Residual w = init_residual(55, 5, DigitSet::radix2(), kFmt, true);
    EXPECT_EQ(w.value(), fx(55, 6));
    EXPECT_EQ(w.carry_word(), 0);
    EXPECT_TRUE(within_bound(w.value(), fx(7, 2), DigitSet::radix2()));
}

TEST(Init, RejectsNarrowFormat)
{
    EXPECT_THROW(init_residual(1, kFb, DigitSet::radix2(), kFmt, false), std::invalid_argument);
}

TEST(DigitSetTest, RedundancyRange)
{
    EXPECT_THROW(DigitSet(4, 1), std::invalid_argument);  // rho = 1/3
    EXPECT_THROW(DigitSet(2, 2), std::invalid_argument);  // rho = 2
    EXPECT_THROW(DigitSet(8, 4), std::invalid_argument);  // radix
    EXPECT_NO_THROW(DigitSet(4, 3));
    EXPECT_EQ(DigitSet::radix4().init_shift(), 2);
    EXPECT_EQ(DigitSet::radix2().init_shift(), 1);
}

TEST(Step, Samples)
{
    const DigitSet r2 = DigitSet::radix2();
    EXPECT_EQ(step(Residual::non_redundant(fx(1, 1), kFmt), fx(1, 0), 1, r2).value(), 0);
    EXPECT_EQ(step(Residual::non_redundant(fx(55, 6), kFmt), fx(7, 2), 1, r2).value(), fx(-1, 5));
    EXPECT_EQ(step(Residual::carry_save(fx(55, 6), 0, kFmt), fx(7, 2), 1, r2).value(), fx(-1, 5));
}

TEST(Step, ZeroDigitIsPureShift)
{
    // ws = wc = 1/4 shifted by 4 gives 2; with d = 3/2 that is outside 2d/3,
    // so the checked step rejects it while the raw carry-save row computes it.
    const Residual w = Residual::carry_save(fx(1, 2), fx(1, 2), kFmt);
    EXPECT_EQ(recurrence_step(w, fx(3, 1), 0, 4).value(), fx(2, 0));
    EXPECT_THROW(step(w, fx(3, 1), 0, DigitSet::radix4()), ResidualBoundError);
    const Residual small = Residual::carry_save(fx(1, 4), fx(1, 4), kFmt);
    EXPECT_EQ(step(small, fx(3, 2), 0, DigitSet::radix4()).value(), fx(1, 1));
}

TEST(Step, BoundViolationAndDigitRange)
{
    const Residual w = Residual::non_redundant(fx(1, 1), kFmt);
    EXPECT_THROW(step(w, fx(1, 1), -1, DigitSet::radix2()), ResidualBoundError);
    EXPECT_THROW(step(w, fx(1, 1), 2, DigitSet::radix2()), std::invalid_argument);
}

// Carry-save and conventional steps agree on random bounded walks, and
// every carry-save row is bitwise a full adder.
TEST(Step, CarrySaveMatchesConventional)
{
    std::mt19937_64 rng(3);
    for (const DigitSet& ds : {DigitSet::radix2(), DigitSet::radix4()}) {
        for (int trial = 0; trial < 2000; ++trial) {
            const i128 d = fx(512 + static_cast<std::int64_t>(rng() % 512), 10);  // [1/2, 1)
            Residual cs = Residual::carry_save(fx(static_cast<std::int64_t>(rng() % 256), 10), 0, kFmt);
            Residual nr = Residual::non_redundant(cs.value(), kFmt);
            for (int i = 0; i < 20; ++i) {
                // Exact digit choice: nearest multiple keeps |w| <= rho d.
                const i128 rw = cs.value() * ds.radix();
                int q = 0;
                i128 best = -1;
                for (int k = -ds.max_digit(); k <= ds.max_digit(); ++k) {
                    const i128 r = rw - k * d;
                    const i128 mag = r < 0 ? -r : r;
                    if (best < 0 || mag < best) {
                        best = mag;
                        q = k;
                    }
                }
                cs = step(cs, d, q, ds);
                nr = step(nr, d, q, ds);
                ASSERT_EQ(cs.value(), nr.value());
                ASSERT_EQ(cs.value(), wrap_signed(rw - q * d, kFmt.width()));
                ASSERT_EQ(cs.carry_word() & 1, q > 0 ? 1 : 0);
            }
        }
    }
}

i128 floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

TEST(Estimate, TruncationError)
{
    std::mt19937_64 rng(11);
    const i128 lim = i128{1} << (kFb + 1);
    for (int radix : {2, 4}) {
        const int lg = radix == 4 ? 2 : 1;
        for (int est_fb : {1, 3, 4}) {
            const i128 ulp = i128{1} << (kFb - est_fb);
            for (int i = 0; i < 20000; ++i) {
                // Words whose shifted sum stays inside the estimate window.
                const i128 a = static_cast<i128>(rng() % static_cast<std::uint64_t>(lim)) - lim / 2;
                const i128 b = static_cast<i128>(rng() % static_cast<std::uint64_t>(lim)) - lim / 2;
                if ((a + b) * radix >= (i128{7} << (kFb - 1)) || (a + b) * radix < -(i128{7} << (kFb - 1))) {
                    continue;
                }
                const Residual cs = Residual::carry_save(a, b, kFmt);
                const i128 y = (a + b) << lg;
                const i128 est = static_cast<i128>(shifted_estimate(cs, radix, est_fb)) * ulp;
                ASSERT_LE(est, y);
                ASSERT_LT(y - est, 2 * ulp);
                const Residual nr = Residual::non_redundant(a + b, kFmt);
                ASSERT_EQ(static_cast<i128>(shifted_estimate(nr, radix, est_fb)), floor_div(y, ulp));
            }
        }
    }
}

TEST(Lookahead, Samples)
{
    EXPECT_EQ(sign_zero_lookahead(0, 0, 8), (SignZero{false, true}));
    EXPECT_EQ(sign_zero_lookahead(0xff, 1, 8), (SignZero{false, true}));
    EXPECT_EQ(sign_zero_lookahead(-1, 1, 8), (SignZero{false, true}));
    EXPECT_EQ(sign_zero_lookahead(0x80, 0, 8), (SignZero{true, false}));
    EXPECT_EQ(sign_zero_lookahead(0x7f, 1, 8), (SignZero{true, false}));
}

SignZero reference_sign_zero(u128 a, u128 b, int width)
{
    const u128 s = (a + b) & low_mask(width);
    return SignZero{((s >> (width - 1)) & 1) != 0, s == 0};
}

TEST(Lookahead, ExhaustiveEightBit)
{
    for (u128 a = 0; a < 256; ++a) {
        for (u128 b = 0; b < 256; ++b) {
            ASSERT_EQ(sign_zero_lookahead(static_cast<i128>(a), static_cast<i128>(b), 8),
                      reference_sign_zero(a, b, 8));
        }
    }
}

TEST(Lookahead, RandomWide)
{
    std::mt19937_64 rng(5);
    for (int width : {13, 33, 64, 68}) {
        for (int i = 0; i < 100000; ++i) {
            const u128 a = ((static_cast<u128>(rng()) << 64) | rng()) & low_mask(width);
            u128 b = ((static_cast<u128>(rng()) << 64) | rng()) & low_mask(width);
            if (i % 4 == 0) {
                b = (~a + 1) & low_mask(width);  // cancellation
            }
            ASSERT_EQ(sign_zero_lookahead(static_cast<i128>(a), static_cast<i128>(b), width),
                      reference_sign_zero(a, b, width));
            const u128 c = static_cast<u128>(rng()) & low_mask(width);
            const u128 neg_c = (~(a + b) + 1) & low_mask(width);
            for (u128 addend : {c, neg_c}) {
                ASSERT_EQ(zero_lookahead3(static_cast<i128>(a), static_cast<i128>(b), static_cast<i128>(addend), width),
                          ((a + b + addend) & low_mask(width)) == 0);
            }
        }
    }
}

TEST(Format, HexOfWords)
{
    EXPECT_EQ(residual_hex(-1, ResidualFormat{5}), "ff");
    EXPECT_EQ(residual_hex(1, ResidualFormat{5}), "01");
}

}  // namespace
