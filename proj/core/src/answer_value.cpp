#include "dars/answer_value.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dars {

ExprPtr Expr::constant(BigRational v) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Constant;
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::variable(std::string name) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Variable;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::nullary(ExprOp op) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    return e;
}

ExprPtr Expr::unary(ExprOp op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = {std::move(a)};
    return e;
}

ExprPtr Expr::binary(ExprOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
        case ExprOp::Constant: return a.value == b.value;
        case ExprOp::Variable: return a.name == b.name;
        default: break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!expr_equal(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.op == ExprOp::Variable) out.insert(e.name);
    for (const auto& a : e.args) collect_vars(*a, out);
}

}  // namespace

std::vector<std::string> free_variables(const Expr& e) {
    std::set<std::string> s;
    collect_vars(e, s);
    return {s.begin(), s.end()};
}

namespace {

bool eval_impl(const Expr& e, const std::vector<std::string>& names,
               const std::vector<double>& values, double& out) {
    switch (e.op) {
        case ExprOp::Constant:
            out = static_cast<double>(e.value);
            return true;
        case ExprOp::Pi:
            out = std::numbers::pi;
            return true;
        case ExprOp::Euler:
            out = std::numbers::e;
            return true;
        case ExprOp::Variable: {
            auto it = std::lower_bound(names.begin(), names.end(), e.name);
            if (it == names.end() || *it != e.name) return false;
            out = values[static_cast<std::size_t>(it - names.begin())];
            return true;
        }
        case ExprOp::Neg: {
            double a;
            if (!eval_impl(*e.args[0], names, values, a)) return false;
            out = -a;
            return true;
        }
        case ExprOp::Sqrt: {
            double a;
            if (!eval_impl(*e.args[0], names, values, a)) return false;
            if (a < 0.0) return false;
            out = std::sqrt(a);
            return true;
        }
        default: break;
    }
    double a, b;
    if (!eval_impl(*e.args[0], names, values, a)) return false;
    if (!eval_impl(*e.args[1], names, values, b)) return false;
    switch (e.op) {
        case ExprOp::Add: out = a + b; break;
        case ExprOp::Sub: out = a - b; break;
        case ExprOp::Mul: out = a * b; break;
        case ExprOp::Div:
            if (std::fabs(b) < 1e-12) return false;
            out = a / b;
            break;
        case ExprOp::Pow:
            out = std::pow(a, b);
            break;
        default: return false;
    }
    return std::isfinite(out);
}

}  // namespace

bool eval_expr(const Expr& e, const std::vector<std::string>& names,
               const std::vector<double>& values, double& out) {
    if (!eval_impl(e, names, values, out)) return false;
    return std::isfinite(out);
}

namespace {

std::string rational_to_string(const BigRational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1) {
        os << "/" << boost::multiprecision::denominator(r);
    }
    return os.str();
}

}  // namespace

std::string expr_to_string(const Expr& e) {
    switch (e.op) {
        case ExprOp::Constant: return rational_to_string(e.value);
        case ExprOp::Pi: return "pi";
        case ExprOp::Euler: return "e";
        case ExprOp::Variable: return e.name;
        case ExprOp::Neg: return "-(" + expr_to_string(*e.args[0]) + ")";
        case ExprOp::Sqrt: return "sqrt(" + expr_to_string(*e.args[0]) + ")";
        default: break;
    }
    const char* sym = "?";
    switch (e.op) {
        case ExprOp::Add: sym = " + "; break;
        case ExprOp::Sub: sym = " - "; break;
        case ExprOp::Mul: sym = "*"; break;
        case ExprOp::Div: sym = "/"; break;
        case ExprOp::Pow: sym = "^"; break;
        default: break;
    }
    return "(" + expr_to_string(*e.args[0]) + sym + expr_to_string(*e.args[1]) + ")";
}

BigRational DecimalValue::to_rational() const {
    BigRational r(significand);
    BigInt scale = 1;
    int e = exponent < 0 ? -exponent : exponent;
    for (int i = 0; i < e; ++i) scale *= 10;
    return exponent < 0 ? r / BigRational(scale) : r * BigRational(scale);
}

AnswerValue AnswerValue::rational(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return AnswerValue(RationalValue{BigRational(std::move(num), std::move(den))});
}

AnswerValue AnswerValue::interval(AnswerValue lo, AnswerValue hi, bool lo_closed, bool hi_closed) {
    IntervalValue iv;
    iv.endpoints.push_back(std::move(lo));
    iv.endpoints.push_back(std::move(hi));
    iv.lo_closed = lo_closed;
    iv.hi_closed = hi_closed;
    return AnswerValue(std::move(iv));
}

BigRational AnswerValue::numeric() const {
    if (is<IntegerValue>()) return BigRational(as<IntegerValue>().value);
    if (is<RationalValue>()) return as<RationalValue>().value;
    if (is<DecimalValue>()) return as<DecimalValue>().to_rational();
    throw std::logic_error("numeric() on non-numeric AnswerValue");
}

bool AnswerValue::identical_to(const AnswerValue& other) const {
    if (storage_.index() != other.storage_.index()) return false;
    if (is<IntegerValue>()) return as<IntegerValue>().value == other.as<IntegerValue>().value;
    if (is<RationalValue>()) return as<RationalValue>().value == other.as<RationalValue>().value;
    if (is<DecimalValue>()) {
        const auto& a = as<DecimalValue>();
        const auto& b = other.as<DecimalValue>();
        return a.significand == b.significand && a.exponent == b.exponent;
    }
    if (is<SymbolicValue>()) {
        return expr_equal(*as<SymbolicValue>().expr, *other.as<SymbolicValue>().expr);
    }
    auto all_identical = [](const std::vector<AnswerValue>& xs, const std::vector<AnswerValue>& ys) {
        if (xs.size() != ys.size()) return false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!xs[i].identical_to(ys[i])) return false;
        }
        return true;
    };
    if (is<TupleValue>()) return all_identical(as<TupleValue>().items, other.as<TupleValue>().items);
    if (is<SetValue>()) return all_identical(as<SetValue>().items, other.as<SetValue>().items);
    if (is<IntervalValue>()) {
        const auto& a = as<IntervalValue>();
        const auto& b = other.as<IntervalValue>();
        return a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed &&
               all_identical(a.endpoints, b.endpoints);
    }
    if (is<MatrixValue>()) {
        const auto& a = as<MatrixValue>();
        const auto& b = other.as<MatrixValue>();
        return a.rows == b.rows && a.cols == b.cols && all_identical(a.cells, b.cells);
    }
    if (is<BooleanValue>()) return as<BooleanValue>().value == other.as<BooleanValue>().value;
    return as<TextValue>().normalized == other.as<TextValue>().normalized;
}

namespace {

std::string decimal_to_string(const DecimalValue& d) {
    std::ostringstream os;
    BigInt sig = d.significand;
    bool neg = sig < 0;
    if (neg) sig = -sig;
    std::string digits = sig.str();
    if (d.exponent >= 0) {
        digits.append(static_cast<std::size_t>(d.exponent), '0');
    } else {
        std::size_t frac = static_cast<std::size_t>(-d.exponent);
        if (digits.size() <= frac) digits.insert(0, frac - digits.size() + 1, '0');
        digits.insert(digits.size() - frac, ".");
    }
    os << (neg ? "-" : "") << digits;
    return os.str();
}

std::string join_values(const std::vector<AnswerValue>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i].to_string();
    }
    return out;
}

}  // namespace

std::string AnswerValue::to_string() const {
    if (is<IntegerValue>()) return as<IntegerValue>().value.str();
    if (is<RationalValue>()) return rational_to_string(as<RationalValue>().value);
    if (is<DecimalValue>()) return decimal_to_string(as<DecimalValue>());
    if (is<SymbolicValue>()) return expr_to_string(*as<SymbolicValue>().expr);
    if (is<TupleValue>()) return "(" + join_values(as<TupleValue>().items, ", ") + ")";
    if (is<SetValue>()) return "{" + join_values(as<SetValue>().items, ", ") + "}";
    if (is<IntervalValue>()) {
        const auto& iv = as<IntervalValue>();
        std::string s = iv.lo_closed ? "[" : "(";
        s += iv.lo().to_string() + ", " + iv.hi().to_string();
        s += iv.hi_closed ? "]" : ")";
        return s;
    }
    if (is<MatrixValue>()) {
        const auto& m = as<MatrixValue>();
        std::string s = "[";
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r) s += ", ";
            s += "[";
            for (std::size_t c = 0; c < m.cols; ++c) {
                if (c) s += ", ";
                s += m.at(r, c).to_string();
            }
            s += "]";
        }
        return s + "]";
    }
    if (is<BooleanValue>()) return as<BooleanValue>().value ? "true" : "false";
    return as<TextValue>().normalized;
}

std::string normalize_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

}  // namespace dars
