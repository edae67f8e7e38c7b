#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vpy/ast_text.hpp"

using namespace vpy;
using vpy_test::find_all;
using vpy_test::lowered;
using vpy_test::throws_kind;
using vpy_test::typed;

TEST(LowerForRange, InductionVariableBecomesNative)
{
    auto root = lowered("arr = [False] * 4\nfor i in range(0, len(arr)):\n    arr[i] = True\nprint(arr)\n");
    auto loops = find_all(*root, NodeKind::ForRange);
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_TRUE(loops[0]->native);
    EXPECT_TRUE(loops[0]->child(0)->native);
    auto stores = find_all(*root, NodeKind::IndexAssign);
    ASSERT_EQ(stores.size(), 1u);
    EXPECT_TRUE(stores[0]->child(1)->native);
    for (const auto& layout : frame_layouts(*root))
        for (const auto& s : layout.slots)
            EXPECT_NE(s.name, "i");
}

TEST(LowerForRange, RemainingOffsetsAreRenumbered)
{
    auto root = lowered("a = 1\nfor i in range(3):\n    print(i)\nb = 2\nprint(a + b)\n");
    auto layouts = frame_layouts(*root);
    ASSERT_EQ(layouts[0].slots.size(), 2u);
    EXPECT_EQ(layouts[0].slots[0].name, "a");
    EXPECT_EQ(layouts[0].slots[1].name, "b");
    EXPECT_TRUE(check_frozen(*root).empty());
}

TEST(LowerForRange, WriteToInductionVariableIsRejected)
{
    EXPECT_TRUE(throws_kind([] { lowered("for i in range(3):\n    i = 0\n"); }, ErrorKind::IteratorMutation));
}

TEST(LowerForRange, EscapingInductionVariableIsRejected)
{
    EXPECT_TRUE(throws_kind([] { lowered("for i in range(3):\n    r = &i\n"); }, ErrorKind::IteratorEscape));
    EXPECT_TRUE(throws_kind(
        [] { lowered("for i in range(3):\n    def f():\n        return i\n    print(f())\n"); },
        ErrorKind::IteratorEscape));
}

TEST(LowerForRange, LoopFreeProgramIsUnchanged)
{
    const char* src = "a = 1\nwhile a < 10:\n    a = a * 2\nprint(a)\n";
    auto before = typed(src);
    auto after = typed(src);
    lower_for_range(*after);
    EXPECT_EQ(serialize_ast(*before), serialize_ast(*after));
}

TEST(LowerForRange, IsIdempotent)
{
    auto once = lowered("s = 0\nfor i in range(10):\n    for j in range(i):\n        s = s + j\nprint(s)\n");
    std::string text = serialize_ast(*once);
    lower_for_range(*once);
    EXPECT_EQ(serialize_ast(*once), text);
}

TEST(LowerForRange, ZeroStepIsRejected)
{
    try {
        lowered("for i in range(0, 5, 0):\n    print(i)\n");
        FAIL() << "zero step accepted";
    } catch (const CompileError& e) {
        EXPECT_NE(std::string(e.what()).find("step"), std::string::npos) << e.what();
    }
}

TEST(FoldConstants, Sum)
{
    auto root = lowered("a = 2 + 3\n");
    auto assign = find_all(*root, NodeKind::Assign)[0];
    ASSERT_EQ(assign->child(1)->kind, NodeKind::Literal);
    EXPECT_EQ(assign->child(1)->lit.ival, 5);
}

TEST(FoldConstants, PowerWrapsAtThirtyTwoBits)
{
    auto root = lowered("a = 2 ** 31\n");
    auto lit = find_all(*root, NodeKind::Assign)[0]->child(1);
    ASSERT_EQ(lit->kind, NodeKind::Literal);
    // Independent wrap: 2^31 reinterpreted as a signed 32-bit value.
    int64_t expected = static_cast<int32_t>(static_cast<uint32_t>(1u << 31));
    EXPECT_EQ(lit->lit.ival, expected);
    EXPECT_EQ(expected, -2147483648LL);

    CompileOptions wide;
    wide.int_width = 64;
    auto root64 = lowered("a = 2 ** 31\n", wide);
    EXPECT_EQ(find_all(*root64, NodeKind::Assign)[0]->child(1)->lit.ival, 2147483648LL);
}

TEST(FoldConstants, LenOfLiteralList)
{
    auto root = lowered("n = len([1, 2, 3])\n");
    auto lit = find_all(*root, NodeKind::Assign)[0]->child(1);
    ASSERT_EQ(lit->kind, NodeKind::Literal);
    EXPECT_EQ(lit->lit.ival, 3);
}

TEST(FoldConstants, DivisionByZeroIsLeftForRuntime)
{
    auto root = lowered("print(1 % 0)\n");
    EXPECT_FALSE(find_all(*root, NodeKind::BinOp).empty());
    EXPECT_EQ(vpy_test::run_oracle("print(1 % 0)\n").exit_code, static_cast<int>(Trap::DivByZero));
}

TEST(FoldConstants, PreservesOracleOutput)
{
    const char* src = "print(7 % -3, -7 % 3, 2 ** 10, 1.5 * 4, 10 / 4, 3 - 5 * 2, 2147483647 + 1)\n";
    auto plain = typed(src);
    auto folded = typed(src);
    fold_constants(*folded);
    EXPECT_EQ(interpret(*plain).out, interpret(*folded).out);
}
