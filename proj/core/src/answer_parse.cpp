#include "dars/answer_parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace dars {

namespace {

constexpr int kMaxParseDepth = 48;

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view trim_trailing_punct(std::string_view s) {
    s = trim(s);
    while (!s.empty()) {
        char c = s.back();
        if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?') {
            s.remove_suffix(1);
            s = trim(s);
        } else {
            break;
        }
    }
    return s;
}

// Scans the interior of a brace group starting just past its '{'.
// Returns the offset of the matching '}' or npos. "\\X" pairs are opaque.
std::size_t find_group_end(std::string_view s, std::size_t from) {
    int depth = 1;
    for (std::size_t i = from; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\\') {
            ++i;  // skip escaped char (also keeps \{ \} out of the count)
            continue;
        }
        if (c == '{') ++depth;
        if (c == '}') {
            if (--depth == 0) return i;
        }
    }
    return std::string_view::npos;
}

}  // namespace

ExtractResult extract_answer(std::string_view text, const ExtractionConfig& cfg) {
    static constexpr std::string_view kBoxed = "\\boxed{";

    // Gather every boxed marker; the last balanced, non-empty one wins.
    std::vector<std::pair<std::size_t, std::string_view>> balanced;
    bool saw_marker = false;
    bool saw_unbalanced = false;
    std::size_t pos = 0;
    while ((pos = text.find(kBoxed, pos)) != std::string_view::npos) {
        saw_marker = true;
        std::size_t body = pos + kBoxed.size();
        std::size_t end = find_group_end(text, body);
        if (end == std::string_view::npos) {
            saw_unbalanced = true;
            pos = body;
            continue;
        }
        balanced.emplace_back(pos, text.substr(body, end - body));
        pos = end + 1;
    }
    for (auto it = balanced.rbegin(); it != balanced.rend(); ++it) {
        std::string_view content = trim(it->second);
        if (!content.empty()) {
            return {{std::string(content), ExtractSource::BoxedMarker}, ExtractError::None};
        }
    }
    if (saw_marker && saw_unbalanced && balanced.empty()) {
        return {{}, ExtractError::UnbalancedBraces};
    }

    std::string lower = ascii_lower(text);
    std::size_t best = std::string_view::npos;
    std::size_t best_end = 0;
    for (const auto& phrase : cfg.answer_phrases) {
        if (phrase.empty()) continue;
        std::string needle = ascii_lower(phrase);
        std::size_t p = lower.rfind(needle);
        if (p != std::string::npos && (best == std::string_view::npos || p > best)) {
            best = p;
            best_end = p + needle.size();
        }
    }
    if (best != std::string_view::npos) {
        std::string_view tail = trim_trailing_punct(text.substr(best_end));
        if (!tail.empty()) {
            return {{std::string(tail), ExtractSource::AnswerPhrase}, ExtractError::None};
        }
    }

    if (cfg.allow_whole_tail) {
        std::string_view rest = trim(text);
        std::size_t nl = rest.find_last_of('\n');
        std::string_view tail = nl == std::string_view::npos ? rest : rest.substr(nl + 1);
        tail = trim_trailing_punct(tail);
        if (tail.empty()) tail = trim_trailing_punct(rest);
        if (!tail.empty()) {
            return {{std::string(tail), ExtractSource::WholeTail}, ExtractError::None};
        }
    }
    return {{}, ExtractError::NoAnswerFound};
}

std::string strip_decorations(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    auto starts_with = [&](std::size_t i, std::string_view token) {
        return s.substr(i).substr(0, token.size()) == token;
    };
    for (std::size_t i = 0; i < s.size();) {
        char c = s[i];
        if (c == '$') {
            ++i;
            continue;
        }
        if (c != '\\') {
            out += c;
            ++i;
            continue;
        }
        if (starts_with(i, "\\\\")) {  // row separator stays intact
            out += "\\\\";
            i += 2;
            continue;
        }
        if (starts_with(i, "\\left") || starts_with(i, "\\right")) {
            i += starts_with(i, "\\left") ? 5 : 6;
            continue;
        }
        if (starts_with(i, "\\,") || starts_with(i, "\\!")) {
            i += 2;
            continue;
        }
        if (starts_with(i, "\\$")) {
            i += 2;
            continue;
        }
        if (starts_with(i, "\\%")) {
            out += '%';
            i += 2;
            continue;
        }
        if (starts_with(i, "\\{") || starts_with(i, "\\}")) {
            out += s[i + 1];
            i += 2;
            continue;
        }
        if (starts_with(i, "\\text{")) {
            std::size_t body = i + 6;
            std::size_t end = find_group_end(s, body);
            if (end == std::string_view::npos) {
                out += s[i];
                ++i;
                continue;
            }
            out.append(s.substr(body, end - body));
            i = end + 1;
            continue;
        }
        out += c;
        ++i;
    }

    // Trailing unit-like decorations.
    std::string_view v = trim(out);
    for (;;) {
        std::string_view before = v;
        if (v.ends_with("^\\circ")) v.remove_suffix(6);
        if (v.ends_with("^{\\circ}")) v.remove_suffix(8);
        if (v.ends_with("%")) v.remove_suffix(1);
        v = trim(v);
        if (v == before) break;
    }
    v = trim_trailing_punct(v);
    return std::string(v);
}

// ---------------------------------------------------------------------------
// Expression grammar
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Number, Name, Command, Symbol, End } kind = End;
    std::string text;
    bool is_decimal = false;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    bool tokenize(std::vector<Token>& out) {
        std::size_t i = 0;
        while (i < s_.size()) {
            char c = s_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (is_ascii_digit(c) || (c == '.' && i + 1 < s_.size() && is_ascii_digit(s_[i + 1]))) {
                if (!lex_number(i, out)) return false;
                continue;
            }
            if (c == '\\') {
                std::size_t j = i + 1;
                while (j < s_.size() && is_ascii_alpha(s_[j])) ++j;
                if (j == i + 1) return false;  // stray backslash
                out.push_back({Token::Command, std::string(s_.substr(i + 1, j - i - 1)), false});
                i = j;
                continue;
            }
            if (is_ascii_alpha(c)) {
                out.push_back({Token::Name, std::string(1, c), false});
                ++i;
                continue;
            }
            static constexpr std::string_view kSymbols = "+-*/^(){}[],&";
            if (kSymbols.find(c) != std::string_view::npos) {
                out.push_back({Token::Symbol, std::string(1, c), false});
                ++i;
                continue;
            }
            return false;  // outside the grammar
        }
        out.push_back({Token::End, "", false});
        return true;
    }

private:
    bool lex_number(std::size_t& i, std::vector<Token>& out) {
        std::size_t start = i;
        std::string digits;
        bool decimal = false;
        while (i < s_.size()) {
            char c = s_[i];
            if (is_ascii_digit(c)) {
                digits += c;
                ++i;
            } else if (c == ',' && !decimal && i + 3 < s_.size() + 1 && is_ascii_digit_run(i + 1, 3) &&
                       !(i + 4 < s_.size() && is_ascii_digit(s_[i + 4]))) {
                // thousands grouping: comma glued to exactly three digits
                digits += s_.substr(i + 1, 3);
                i += 4;
            } else if (c == '.' && !decimal && i + 1 < s_.size() && is_ascii_digit(s_[i + 1])) {
                decimal = true;
                digits += '.';
                ++i;
            } else {
                break;
            }
        }
        if (digits.empty()) return false;
        (void)start;
        out.push_back({Token::Number, digits, decimal});
        return true;
    }

    bool is_ascii_digit_run(std::size_t from, std::size_t n) const {
        if (from + n > s_.size()) return false;
        for (std::size_t k = 0; k < n; ++k) {
            if (!is_ascii_digit(s_[from + k])) return false;
        }
        return true;
    }

    std::string_view s_;
};

std::optional<BigRational> parse_decimal_digits(const std::string& digits, int& exponent_out) {
    std::size_t dot = digits.find('.');
    std::string sig = digits;
    int exponent = 0;
    if (dot != std::string::npos) {
        exponent = -static_cast<int>(digits.size() - dot - 1);
        sig.erase(dot, 1);
    }
    if (sig.empty()) return std::nullopt;
    BigInt v(sig);
    exponent_out = exponent;
    return BigRational(v);
}

class ExprParser {
public:
    ExprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    std::optional<ExprPtr> parse_full() {
        auto e = parse_sum(0);
        if (!e || peek().kind != Token::End) return std::nullopt;
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool accept_symbol(char c) {
        if (peek().kind == Token::Symbol && peek().text[0] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::optional<ExprPtr> parse_sum(int depth) {
        if (depth > kMaxParseDepth) return std::nullopt;
        bool neg = false;
        if (accept_symbol('-')) neg = true;
        else accept_symbol('+');
        auto lhs = parse_product(depth + 1);
        if (!lhs) return std::nullopt;
        ExprPtr acc = neg ? Expr::unary(ExprOp::Neg, *lhs) : *lhs;
        for (;;) {
            if (accept_symbol('+')) {
                auto rhs = parse_product(depth + 1);
                if (!rhs) return std::nullopt;
                acc = Expr::binary(ExprOp::Add, acc, *rhs);
            } else if (accept_symbol('-')) {
                auto rhs = parse_product(depth + 1);
                if (!rhs) return std::nullopt;
                acc = Expr::binary(ExprOp::Sub, acc, *rhs);
            } else {
                break;
            }
        }
        return acc;
    }

    bool starts_primary() const {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Number:
            case Token::Name: return true;
            case Token::Command:
                return t.text == "frac" || t.text == "dfrac" || t.text == "tfrac" ||
                       t.text == "sqrt" || t.text == "pi";
            case Token::Symbol: return t.text[0] == '(' || t.text[0] == '{';
            default: return false;
        }
    }

    std::optional<ExprPtr> parse_product(int depth) {
        if (depth > kMaxParseDepth) return std::nullopt;
        auto lhs = parse_power(depth + 1);
        if (!lhs) return std::nullopt;
        ExprPtr acc = *lhs;
        for (;;) {
            if (accept_symbol('*')) {
                auto rhs = parse_power(depth + 1);
                if (!rhs) return std::nullopt;
                acc = Expr::binary(ExprOp::Mul, acc, *rhs);
            } else if (peek().kind == Token::Command &&
                       (peek().text == "cdot" || peek().text == "times")) {
                ++pos_;
                auto rhs = parse_power(depth + 1);
                if (!rhs) return std::nullopt;
                acc = Expr::binary(ExprOp::Mul, acc, *rhs);
            } else if (accept_symbol('/')) {
                auto rhs = parse_power(depth + 1);
                if (!rhs) return std::nullopt;
                acc = Expr::binary(ExprOp::Div, acc, *rhs);
            } else if (starts_primary()) {
                auto rhs = parse_power(depth + 1);  // juxtaposition: 2\sqrt{3}, 3x
                if (!rhs) return std::nullopt;
                acc = Expr::binary(ExprOp::Mul, acc, *rhs);
            } else {
                break;
            }
        }
        return acc;
    }

    std::optional<ExprPtr> parse_power(int depth) {
        if (depth > kMaxParseDepth) return std::nullopt;
        bool neg = accept_symbol('-');
        auto base = parse_primary(depth + 1);
        if (!base) return std::nullopt;
        ExprPtr e = *base;
        if (accept_symbol('^')) {
            bool exp_neg = accept_symbol('-');
            auto exp = parse_primary(depth + 1);
            if (!exp) return std::nullopt;
            ExprPtr ee = exp_neg ? Expr::unary(ExprOp::Neg, *exp) : *exp;
            e = Expr::binary(ExprOp::Pow, e, ee);
        }
        return neg ? Expr::unary(ExprOp::Neg, e) : e;
    }

    std::optional<ExprPtr> parse_group(int depth) {
        // '{' sum '}' used by \frac, exponents, \sqrt
        if (!accept_symbol('{')) return std::nullopt;
        auto e = parse_sum(depth + 1);
        if (!e || !accept_symbol('}')) return std::nullopt;
        return e;
    }

    // A \frac argument is either a brace group or one primary token.
    std::optional<ExprPtr> parse_arg(int depth) {
        if (peek().kind == Token::Symbol && peek().text[0] == '{') return parse_group(depth);
        if (peek().kind == Token::Number) {
            // LaTeX treats \frac12 as single-digit arguments.
            Token t = peek();
            if (t.text.size() > 1 && !t.is_decimal) {
                ExprPtr e = Expr::constant(BigRational(BigInt(t.text.substr(0, 1))));
                tokens_[pos_].text.erase(0, 1);
                return e;
            }
        }
        return parse_primary(depth);
    }

    std::optional<ExprPtr> parse_primary(int depth) {
        if (depth > kMaxParseDepth) return std::nullopt;
        const Token& t = peek();
        switch (t.kind) {
            case Token::Number: {
                Token tok = advance();
                int exponent = 0;
                auto v = parse_decimal_digits(tok.text, exponent);
                if (!v) return std::nullopt;
                BigRational r = *v;
                for (int k = 0; k < -exponent; ++k) r /= 10;
                return Expr::constant(r);
            }
            case Token::Name: {
                std::string n = advance().text;
                if (n == "e") return Expr::nullary(ExprOp::Euler);
                return Expr::variable(n);
            }
            case Token::Command: {
                Token tok = advance();
                if (tok.text == "pi") return Expr::nullary(ExprOp::Pi);
                if (tok.text == "frac" || tok.text == "dfrac" || tok.text == "tfrac") {
                    auto a = parse_arg(depth + 1);
                    if (!a) return std::nullopt;
                    auto b = parse_arg(depth + 1);
                    if (!b) return std::nullopt;
                    return Expr::binary(ExprOp::Div, *a, *b);
                }
                if (tok.text == "sqrt") {
                    std::optional<ExprPtr> index;
                    if (accept_symbol('[')) {
                        index = parse_sum(depth + 1);
                        if (!index || !accept_symbol(']')) return std::nullopt;
                    }
                    auto a = parse_arg(depth + 1);
                    if (!a) return std::nullopt;
                    if (!index) return Expr::unary(ExprOp::Sqrt, *a);
                    // \sqrt[n]{x} = x^(1/n)
                    ExprPtr inv = Expr::binary(ExprOp::Div, Expr::constant(BigRational(1)), *index);
                    return Expr::binary(ExprOp::Pow, *a, inv);
                }
                return std::nullopt;
            }
            case Token::Symbol:
                if (t.text[0] == '(') {
                    ++pos_;
                    auto e = parse_sum(depth + 1);
                    if (!e || !accept_symbol(')')) return std::nullopt;
                    return e;
                }
                if (t.text[0] == '{') return parse_group(depth);
                return std::nullopt;
            default: return std::nullopt;
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Exact evaluation of subtrees that stay rational.
std::optional<BigRational> fold_rational(const Expr& e) {
    switch (e.op) {
        case ExprOp::Constant: return e.value;
        case ExprOp::Pi:
        case ExprOp::Euler:
        case ExprOp::Variable: return std::nullopt;
        case ExprOp::Neg: {
            auto a = fold_rational(*e.args[0]);
            if (!a) return std::nullopt;
            return -*a;
        }
        case ExprOp::Sqrt: {
            auto a = fold_rational(*e.args[0]);
            if (!a || *a < 0) return std::nullopt;
            BigInt num = boost::multiprecision::numerator(*a);
            BigInt den = boost::multiprecision::denominator(*a);
            BigInt rn = boost::multiprecision::sqrt(num);
            BigInt rd = boost::multiprecision::sqrt(den);
            if (rn * rn == num && rd * rd == den) return BigRational(rn, rd);
            return std::nullopt;
        }
        default: break;
    }
    auto a = fold_rational(*e.args[0]);
    auto b = fold_rational(*e.args[1]);
    if (!a || !b) return std::nullopt;
    switch (e.op) {
        case ExprOp::Add: return *a + *b;
        case ExprOp::Sub: return *a - *b;
        case ExprOp::Mul: return *a * *b;
        case ExprOp::Div:
            if (*b == 0) return std::nullopt;
            return *a / *b;
        case ExprOp::Pow: {
            if (boost::multiprecision::denominator(*b) != 1) return std::nullopt;
            BigInt exp = boost::multiprecision::numerator(*b);
            if (exp < -64 || exp > 64) return std::nullopt;
            bool inv = exp < 0;
            if (inv) {
                if (*a == 0) return std::nullopt;
                exp = -exp;
            }
            BigRational r(1);
            for (BigInt i = 0; i < exp; ++i) r *= *a;
            return inv ? BigRational(1) / r : r;
        }
        default: return std::nullopt;
    }
}

AnswerValue parse_any(std::string_view text, int depth);

// Integer literal, optionally sign-prefixed: plain digits or 1-3 digits
// followed by ",ddd" groups.
std::optional<BigInt> parse_integer_literal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    std::string digits;
    if (std::all_of(s.begin(), s.end(), is_ascii_digit)) {
        digits.assign(s);
    } else {
        std::size_t head = 0;
        while (head < s.size() && is_ascii_digit(s[head])) ++head;
        if (head == 0 || head > 3) return std::nullopt;
        digits.assign(s.substr(0, head));
        std::size_t i = head;
        while (i < s.size()) {
            if (s[i] != ',' || i + 3 >= s.size()) return std::nullopt;
            for (std::size_t k = 1; k <= 3; ++k) {
                if (!is_ascii_digit(s[i + k])) return std::nullopt;
            }
            digits.append(s.substr(i + 1, 3));
            i += 4;
        }
    }
    BigInt v(digits);
    return neg ? -v : v;
}

std::optional<AnswerValue> parse_decimal_literal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    std::size_t dot = s.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (fp.empty() && ip.empty()) return std::nullopt;
    auto all_digits = [](std::string_view v) {
        return std::all_of(v.begin(), v.end(), is_ascii_digit);
    };
    if (!all_digits(ip) || !all_digits(fp) || fp.empty()) return std::nullopt;
    std::string sig = std::string(ip) + std::string(fp);
    BigInt v(sig.empty() ? "0" : sig);
    int exponent = -static_cast<int>(fp.size());
    while (v != 0 && exponent < 0 && v % 10 == 0) {
        v /= 10;
        ++exponent;
    }
    if (v == 0) exponent = 0;
    return AnswerValue::decimal(neg ? -v : v, exponent);
}

// Splits on top-level commas; thousands-grouping commas stay glued.
std::vector<std::string_view> split_elements(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\\') {
            ++i;
            continue;
        }
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            bool thousands = i > 0 && is_ascii_digit(s[i - 1]) && i + 3 < s.size() + 1 &&
                             std::all_of(s.begin() + i + 1,
                                         s.begin() + std::min(s.size(), i + 4), is_ascii_digit) &&
                             i + 3 <= s.size() - 1 + 0 &&
                             (i + 4 >= s.size() || !is_ascii_digit(s[i + 4]));
            if (i + 3 >= s.size()) thousands = false;
            if (!thousands) {
                parts.push_back(trim(s.substr(start, i - start)));
                start = i + 1;
            }
        }
    }
    parts.push_back(trim(s.substr(start)));
    return parts;
}

std::optional<AnswerValue> parse_matrix(std::string_view s, int depth) {
    std::string_view kind;
    if (s.starts_with("\\begin{pmatrix}")) kind = "pmatrix";
    else if (s.starts_with("\\begin{bmatrix}")) kind = "bmatrix";
    else return std::nullopt;
    std::string end_tag = "\\end{" + std::string(kind) + "}";
    if (!s.ends_with(end_tag)) return std::nullopt;
    std::string_view body = s.substr(15, s.size() - 15 - end_tag.size());

    std::vector<std::string_view> rows;
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < body.size(); ++i) {
        if (body[i] == '\\' && body[i + 1] == '\\') {
            rows.push_back(trim(body.substr(start, i - start)));
            start = i + 2;
            ++i;
        }
    }
    rows.push_back(trim(body.substr(start)));
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) return std::nullopt;

    std::vector<AnswerValue> cells;
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<std::string_view> row_cells;
        std::size_t cstart = 0;
        std::string_view row = rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] == '\\') {
                ++i;
                continue;
            }
            if (row[i] == '&') {
                row_cells.push_back(trim(row.substr(cstart, i - cstart)));
                cstart = i + 1;
            }
        }
        row_cells.push_back(trim(row.substr(cstart)));
        if (r == 0) cols = row_cells.size();
        if (row_cells.size() != cols) return std::nullopt;  // ragged
        for (auto cell : row_cells) cells.push_back(parse_any(cell, depth + 1));
    }
    return AnswerValue::matrix(rows.size(), cols, std::move(cells));
}

std::optional<AnswerValue> parse_scalar(std::string_view s, int depth);

AnswerValue negate_value(const AnswerValue& v) {
    if (v.is<IntegerValue>()) return AnswerValue::integer(-v.as<IntegerValue>().value);
    if (v.is<RationalValue>()) return AnswerValue::rational(-v.as<RationalValue>().value);
    if (v.is<DecimalValue>()) {
        const auto& d = v.as<DecimalValue>();
        return AnswerValue::decimal(-d.significand, d.exponent);
    }
    if (v.is<SymbolicValue>()) {
        return AnswerValue::symbolic(Expr::unary(ExprOp::Neg, v.as<SymbolicValue>().expr));
    }
    return v;
}

std::optional<AnswerValue> parse_bracketed(std::string_view s, int depth) {
    if (s.size() < 2) return std::nullopt;
    char open = s.front();
    char close = s.back();
    if (open == '{' && close == '}') {
        std::string_view body = trim(s.substr(1, s.size() - 2));
        std::vector<AnswerValue> items;
        if (!body.empty()) {
            for (auto part : split_elements(body)) items.push_back(parse_any(part, depth + 1));
        }
        return AnswerValue::set(std::move(items));
    }
    bool open_ok = open == '(' || open == '[';
    bool close_ok = close == ')' || close == ']';
    if (!open_ok || !close_ok) return std::nullopt;

    std::string_view body = trim(s.substr(1, s.size() - 2));
    auto parts = split_elements(body);
    if (parts.size() < 2) return std::nullopt;  // scalar parens handled elsewhere

    if (parts.size() == 2 && (open == '[' || close == ']')) {
        AnswerValue lo = parse_any(parts[0], depth + 1);
        AnswerValue hi = parse_any(parts[1], depth + 1);
        if (lo.is_numeric() && hi.is_numeric() && lo.numeric() > hi.numeric()) {
            return std::nullopt;  // not a well-formed interval
        }
        return AnswerValue::interval(std::move(lo), std::move(hi), open == '[', close == ']');
    }
    std::vector<AnswerValue> items;
    for (auto part : parts) items.push_back(parse_any(part, depth + 1));
    return AnswerValue::tuple(std::move(items));
}

std::optional<AnswerValue> parse_scalar(std::string_view s, int depth) {
    if (depth > kMaxParseDepth) return std::nullopt;
    if (auto iv = parse_integer_literal(s)) return AnswerValue::integer(std::move(*iv));
    if (auto dv = parse_decimal_literal(s)) return dv;

    std::vector<Token> tokens;
    if (!Lexer(s).tokenize(tokens)) return std::nullopt;
    auto expr = ExprParser(std::move(tokens)).parse_full();
    if (!expr) return std::nullopt;
    if (auto r = fold_rational(**expr)) {
        if (boost::multiprecision::denominator(*r) == 1) {
            return AnswerValue::integer(boost::multiprecision::numerator(*r));
        }
        return AnswerValue::rational(std::move(*r));
    }
    return AnswerValue::symbolic(std::move(*expr));
}

AnswerValue parse_any(std::string_view raw_text, int depth) {
    std::string_view s = trim(raw_text);
    if (depth > kMaxParseDepth || s.empty()) {
        return AnswerValue::text(normalize_text(raw_text));
    }

    std::string lowered = normalize_text(s);
    if (lowered == "true" || lowered == "yes") return AnswerValue::boolean(true);
    if (lowered == "false" || lowered == "no") return AnswerValue::boolean(false);

    if (auto m = parse_matrix(s, depth)) return *m;

    if (s.starts_with("\\pm")) {
        std::string_view rest = trim(s.substr(3));
        if (!rest.empty()) {
            if (auto v = parse_scalar(rest, depth + 1)) {
                std::vector<AnswerValue> items;
                items.push_back(*v);
                items.push_back(negate_value(*v));
                return AnswerValue::set(std::move(items));
            }
        }
    }

    char front = s.front();
    if (front == '(' || front == '[' || front == '{') {
        // Only when the opening delimiter closes at the very end.
        int d = 0;
        bool wraps = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == '\\') {
                ++i;
                continue;
            }
            if (c == '(' || c == '[' || c == '{') ++d;
            if (c == ')' || c == ']' || c == '}') {
                --d;
                if (d == 0) {
                    wraps = i + 1 == s.size();
                    break;
                }
            }
        }
        if (wraps) {
            if (auto v = parse_bracketed(s, depth)) return *v;
        }
    }

    if (auto v = parse_scalar(s, depth)) return *v;
    return AnswerValue::text(normalize_text(s));
}

}  // namespace

AnswerValue parse_answer_text(std::string_view text) {
    std::string stripped = strip_decorations(text);
    return parse_any(stripped, 0);
}

AnswerValue parse_answer(const RawAnswer& raw) { return parse_answer_text(raw.text); }

const char* to_string(ExtractSource s) {
    switch (s) {
        case ExtractSource::BoxedMarker: return "boxed";
        case ExtractSource::AnswerPhrase: return "phrase";
        case ExtractSource::WholeTail: return "tail";
    }
    return "?";
}

const char* to_string(ExtractError e) {
    switch (e) {
        case ExtractError::None: return "none";
        case ExtractError::NoAnswerFound: return "no_answer_found";
        case ExtractError::UnbalancedBraces: return "unbalanced_braces";
    }
    return "?";
}

}  // namespace dars
