// Copyright 2026 The spindigit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spindigit/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "spindigit/error.hpp"

namespace spindigit {

namespace {

std::string format_angle(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "end of input", line_, col_});
                return out;
            }
            const std::size_t line = line_;
            const std::size_t col = col_;
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                        src_[pos_] == '_')) {
                    word += advance();
                }
                out.push_back({Tok::Ident, word, line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::string num;
                while (pos_ < src_.size() && is_number_char(num)) {
                    num += advance();
                }
                out.push_back({Tok::Number, num, line, col});
            } else if (c == '"') {
                advance();
                std::string s;
                while (pos_ < src_.size() && src_[pos_] != '"' &&
                       src_[pos_] != '\n') {
                    s += advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw ParseError("unterminated string", line, col);
                }
                advance();
                out.push_back({Tok::String, s, line, col});
            } else if (std::string_view("()[],;+-*/").find(c) !=
                       std::string_view::npos) {
                out.push_back({Tok::Symbol, std::string(1, advance()), line,
                               col});
            } else if (c == '>' || c == '{' || c == '}' ||
                       c == '=' || c == '^') {
                throw UnsupportedError(std::string(1, c), line);
            } else {
                throw ParseError(std::string("unexpected character '") + c +
                                     "'",
                                 line, col);
            }
        }
    }

  private:
    bool is_number_char(const std::string &sofar) const {
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return true;
        }
        if (c == 'e' || c == 'E') {
            return true;
        }
        if ((c == '+' || c == '-') && !sofar.empty() &&
            (sofar.back() == 'e' || sofar.back() == 'E')) {
            return true;
        }
        return false;
    }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() &&
                       src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Circuit parse() {
        parse_header();
        std::optional<Circuit> circuit;
        while (peek().kind != Tok::End) {
            const Token &head = peek();
            if (head.kind != Tok::Ident) {
                fail("expected a statement", head);
            }
            if (head.text == "include") {
                parse_include();
            } else if (head.text == "qreg") {
                if (circuit) {
                    throw UnsupportedError("second qreg", head.line);
                }
                circuit.emplace(parse_qreg());
            } else if (head.text == "u3" || head.text == "cx") {
                if (!circuit) {
                    fail("gate before qreg declaration", head);
                }
                circuit->append(head.text == "u3" ? parse_u3() : parse_cx());
            } else {
                throw UnsupportedError(head.text, head.line);
            }
        }
        if (!circuit) {
            fail("missing qreg declaration", peek());
        }
        return std::move(*circuit);
    }

  private:
    const Token &peek() const { return toks_[pos_]; }
    const Token &next() {
        const Token &t = toks_[pos_];
        if (t.kind != Tok::End) {
            ++pos_;
        }
        return t;
    }

    [[noreturn]] static void fail(const std::string &msg, const Token &at) {
        throw ParseError(msg + " at '" + at.text + "'", at.line, at.column);
    }

    void expect_symbol(char s) {
        const Token &t = next();
        if (t.kind != Tok::Symbol || t.text[0] != s) {
            fail(std::string("expected '") + s + "'", t);
        }
    }

    const Token &expect_ident() {
        const Token &t = next();
        if (t.kind != Tok::Ident) {
            fail("expected identifier", t);
        }
        return t;
    }

    std::size_t expect_index() {
        const Token &t = next();
        std::size_t value = 0;
        if (t.kind != Tok::Number) {
            fail("expected integer index", t);
        }
        const auto res =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size()) {
            fail("expected integer index", t);
        }
        return value;
    }

    void parse_header() {
        const Token &t = next();
        if (t.kind != Tok::Ident || t.text != "OPENQASM") {
            fail("expected 'OPENQASM 2.0;' header", t);
        }
        const Token &ver = next();
        if (ver.kind != Tok::Number) {
            fail("expected version number", ver);
        }
        if (ver.text != "2.0") {
            throw UnsupportedError("OPENQASM " + ver.text, ver.line);
        }
        expect_symbol(';');
    }

    void parse_include() {
        next();
        const Token &file = next();
        if (file.kind != Tok::String) {
            fail("expected include file name", file);
        }
        if (file.text != "qelib1.inc") {
            throw UnsupportedError("include \"" + file.text + "\"", file.line);
        }
        expect_symbol(';');
    }

    Circuit parse_qreg() {
        next();
        reg_name_ = expect_ident().text;
        expect_symbol('[');
        const Token &size_tok = peek();
        const std::size_t width = expect_index();
        if (width == 0) {
            fail("register width must be positive", size_tok);
        }
        expect_symbol(']');
        expect_symbol(';');
        width_ = width;
        return Circuit(width);
    }

    std::size_t parse_operand() {
        const Token &name = expect_ident();
        if (name.text != reg_name_) {
            fail("unknown register", name);
        }
        expect_symbol('[');
        const Token &idx_tok = peek();
        const std::size_t idx = expect_index();
        if (idx >= width_) {
            fail("qubit index out of range", idx_tok);
        }
        expect_symbol(']');
        return idx;
    }

    Gate parse_u3() {
        next();
        expect_symbol('(');
        U3Params p;
        p.theta = parse_expr();
        expect_symbol(',');
        p.phi = parse_expr();
        expect_symbol(',');
        p.lambda = parse_expr();
        expect_symbol(')');
        const std::size_t q = parse_operand();
        expect_symbol(';');
        return Gate::u3(q, p);
    }

    Gate parse_cx() {
        next();
        const std::size_t c = parse_operand();
        expect_symbol(',');
        const std::size_t t = parse_operand();
        expect_symbol(';');
        return Gate::cnot(c, t);
    }

    bool at_symbol(char s) const {
        return peek().kind == Tok::Symbol && peek().text[0] == s;
    }

    double parse_expr() {
        double v = parse_term();
        while (at_symbol('+') || at_symbol('-')) {
            const char op = next().text[0];
            const double rhs = parse_term();
            v = op == '+' ? v + rhs : v - rhs;
        }
        return v;
    }

    double parse_term() {
        double v = parse_unary();
        while (at_symbol('*') || at_symbol('/')) {
            const char op = next().text[0];
            const double rhs = parse_unary();
            v = op == '*' ? v * rhs : v / rhs;
        }
        return v;
    }

    double parse_unary() {
        if (at_symbol('-')) {
            next();
            return -parse_unary();
        }
        if (at_symbol('+')) {
            next();
            return parse_unary();
        }
        return parse_primary();
    }

    double parse_primary() {
        const Token &t = next();
        if (t.kind == Tok::Number) {
            double v = 0.0;
            const auto res = std::from_chars(
                t.text.data(), t.text.data() + t.text.size(), v);
            if (res.ec != std::errc{} ||
                res.ptr != t.text.data() + t.text.size()) {
                fail("malformed number", t);
            }
            return v;
        }
        if (t.kind == Tok::Ident && t.text == "pi") {
            return std::numbers::pi;
        }
        if (t.kind == Tok::Symbol && t.text[0] == '(') {
            const double v = parse_expr();
            expect_symbol(')');
            return v;
        }
        fail("expected angle expression", t);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string reg_name_;
    std::size_t width_ = 0;
};

} // namespace

std::string export_openqasm(const Circuit &circuit) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" +
                      std::to_string(circuit.n_qubits()) + "];\n";
    for (const Gate &g : circuit.flattened()) {
        if (g.kind == GateKind::CNOT) {
            out += "cx q[" + std::to_string(g.qubits[0]) + "],q[" +
                   std::to_string(g.qubits[1]) + "];\n";
        } else {
            out += "u3(" + format_angle(g.params.theta) + "," +
                   format_angle(g.params.phi) + "," +
                   format_angle(g.params.lambda) + ") q[" +
                   std::to_string(g.qubits[0]) + "];\n";
        }
    }
    return out;
}

Circuit import_openqasm(std::string_view text) {
    return Parser(Lexer(text).run()).parse();
}

} // namespace spindigit
