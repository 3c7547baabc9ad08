#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace dars {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Expression tree for answers that are not plain numbers: radicals,
// the constants pi/e, free variables, and arithmetic over them.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprOp : std::uint8_t {
    Constant,  // exact rational leaf
    Pi,
    Euler,
    Variable,  // named free variable
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Sqrt,
    Neg,
};

struct Expr {
    ExprOp op = ExprOp::Constant;
    BigRational value;           // Constant
    std::string name;            // Variable
    std::vector<ExprPtr> args;   // operator children

    static ExprPtr constant(BigRational v);
    static ExprPtr variable(std::string name);
    static ExprPtr nullary(ExprOp op);
    static ExprPtr unary(ExprOp op, ExprPtr a);
    static ExprPtr binary(ExprOp op, ExprPtr a, ExprPtr b);
};

bool expr_equal(const Expr& a, const Expr& b);
std::string expr_to_string(const Expr& e);

// Sorted, deduplicated free-variable names.
std::vector<std::string> free_variables(const Expr& e);

// Evaluates at an assignment over free_variables(e) (values parallel to the
// sorted name list). Returns false on domain faults (division by ~0,
// negative radicand, non-finite result).
bool eval_expr(const Expr& e, const std::vector<std::string>& names,
               const std::vector<double>& values, double& out);

class AnswerValue;

struct IntegerValue {
    BigInt value;
};

// Always lowest terms with positive denominator (BigRational canonicalizes).
struct RationalValue {
    BigRational value;
};

// significand * 10^exponent. Distinct from RationalValue because decimal
// literals in responses are usually rounded, which relaxes the comparison
// tolerance downstream.
struct DecimalValue {
    BigInt significand;
    int exponent = 0;

    BigRational to_rational() const;
};

struct SymbolicValue {
    ExprPtr expr;
};

struct TupleValue {
    std::vector<AnswerValue> items;  // order-sensitive
};

struct SetValue {
    std::vector<AnswerValue> items;  // unordered multiset
};

struct IntervalValue {
    std::vector<AnswerValue> endpoints;  // exactly [lo, hi]
    bool lo_closed = true;
    bool hi_closed = true;

    const AnswerValue& lo() const { return endpoints[0]; }
    const AnswerValue& hi() const { return endpoints[1]; }
};

struct MatrixValue {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<AnswerValue> cells;  // row-major, rows*cols entries

    const AnswerValue& at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

struct BooleanValue {
    bool value = false;
};

// Fallback for anything the grammar cannot interpret; compared by
// normalized string equality.
struct TextValue {
    std::string normalized;
};

class AnswerValue {
public:
    using Storage = std::variant<IntegerValue, RationalValue, DecimalValue, SymbolicValue,
                                 TupleValue, SetValue, IntervalValue, MatrixValue,
                                 BooleanValue, TextValue>;

    AnswerValue() : storage_(IntegerValue{0}) {}
    explicit AnswerValue(Storage s) : storage_(std::move(s)) {}

    static AnswerValue integer(BigInt v) { return AnswerValue(IntegerValue{std::move(v)}); }
    static AnswerValue rational(BigRational v) { return AnswerValue(RationalValue{std::move(v)}); }
    static AnswerValue rational(BigInt num, BigInt den);
    static AnswerValue decimal(BigInt significand, int exponent) {
        return AnswerValue(DecimalValue{std::move(significand), exponent});
    }
    static AnswerValue symbolic(ExprPtr e) { return AnswerValue(SymbolicValue{std::move(e)}); }
    static AnswerValue tuple(std::vector<AnswerValue> items) {
        return AnswerValue(TupleValue{std::move(items)});
    }
    static AnswerValue set(std::vector<AnswerValue> items) {
        return AnswerValue(SetValue{std::move(items)});
    }
    static AnswerValue interval(AnswerValue lo, AnswerValue hi, bool lo_closed, bool hi_closed);
    static AnswerValue matrix(std::size_t rows, std::size_t cols, std::vector<AnswerValue> cells) {
        return AnswerValue(MatrixValue{rows, cols, std::move(cells)});
    }
    static AnswerValue boolean(bool v) { return AnswerValue(BooleanValue{v}); }
    static AnswerValue text(std::string normalized) {
        return AnswerValue(TextValue{std::move(normalized)});
    }

    template <typename T>
    bool is() const { return std::holds_alternative<T>(storage_); }
    template <typename T>
    const T& as() const { return std::get<T>(storage_); }

    const Storage& storage() const { return storage_; }

    bool is_numeric() const {
        return is<IntegerValue>() || is<RationalValue>() || is<DecimalValue>();
    }

    // Exact value for the numeric tower; only valid when is_numeric().
    BigRational numeric() const;

    // Structural identity (exact fields, not mathematical equivalence).
    bool identical_to(const AnswerValue& other) const;

    std::string to_string() const;

private:
    Storage storage_;
};

// Collapses whitespace runs, lowercases ASCII, trims ends; used for
// TextValue comparison and boolean detection.
std::string normalize_text(std::string_view s);

}  // namespace dars
