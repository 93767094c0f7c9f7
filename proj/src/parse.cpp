#include <cctype>
#include <sstream>

#include "fanokernel/poly.hpp"

namespace fano {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return eof() ? '\0' : s[pos]; }
    char get() {
        char c = s[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_ws() {
        while (!eof() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r' || s[pos] == '\n'))
            get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line, col); }

    uint64_t read_uint() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        uint64_t v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + uint64_t(get() - '0');
            if (v > (1ull << 62)) fail("number too large");
        }
        return v;
    }
    std::string read_ident() {
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
            fail("expected an identifier");
        std::string id;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            id += get();
        return id;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
};

int var_index(const PolyRing& R, const std::string& name, Cursor& cur) {
    for (int i = 0; i < R.nvars(); ++i)
        if (R.names()[i] == name) return i;
    cur.fail("unknown variable '" + name + "'");
}

// mono := var ('^' exp)? ('*' var ('^' exp)?)*
Mono read_mono_tail(RingPtr R, Cursor& cur, int first_var) {
    Mono m = Mono::one();
    int var = first_var;
    for (;;) {
        int e = 1;
        cur.skip_ws();
        if (cur.peek() == '^') {
            cur.get();
            cur.skip_ws();
            e = int(cur.read_uint());
            if (e > 127) cur.fail("exponent exceeds 127");
        }
        if (m.exp(var) + e > 127) cur.fail("exponent exceeds 127");
        m = m * Mono::var(var, e);
        cur.skip_ws();
        if (cur.peek() != '*') break;
        size_t save = cur.pos;
        int sl = cur.line, sc = cur.col;
        cur.get();
        cur.skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(cur.peek())) && cur.peek() != '_') {
            // the '*' belonged to something else (shouldn't happen inside a mono)
            cur.pos = save;
            cur.line = sl;
            cur.col = sc;
            break;
        }
        var = var_index(*R, cur.read_ident(), cur);
    }
    return m;
}

Poly read_poly(RingPtr R, Cursor& cur, const std::string& stop_chars) {
    const PrimeField& F = R->field();
    std::vector<Term> ts;
    cur.skip_ws();
    if (cur.eof()) cur.fail("empty polynomial");
    bool first = true;
    for (;;) {
        cur.skip_ws();
        if (cur.eof() || stop_chars.find(cur.peek()) != std::string::npos) {
            if (first) cur.fail("empty polynomial");
            break;
        }
        uint32_t sign = 1;
        if (cur.peek() == '+' || cur.peek() == '-') {
            if (first) {
                if (cur.peek() == '-') sign = F.modulus() - 1;
                cur.get();
            } else {
                sign = (cur.get() == '-') ? F.modulus() - 1 : 1;
            }
            cur.skip_ws();
        } else if (!first) {
            cur.fail("expected '+' or '-' between terms");
        }
        // term := coeff | coeff '*' mono | mono
        uint32_t c = 1;
        Mono m = Mono::one();
        cur.skip_ws();
        if (cur.eof()) cur.fail("dangling sign");
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            c = uint32_t(cur.read_uint() % F.modulus());
            cur.skip_ws();
            if (cur.peek() == '*') {
                cur.get();
                cur.skip_ws();
                int v = var_index(*R, cur.read_ident(), cur);
                m = read_mono_tail(R, cur, v);
            }
        } else if (std::isalpha(static_cast<unsigned char>(cur.peek())) || cur.peek() == '_') {
            int v = var_index(*R, cur.read_ident(), cur);
            m = read_mono_tail(R, cur, v);
        } else {
            cur.fail("expected a term");
        }
        ts.push_back({m, F.mul(c, sign)});
        first = false;
    }
    return Poly::from_terms(R, std::move(ts));
}

}  // namespace

RingPtr parse_ring_header(const std::string& text) {
    Cursor cur{text};
    cur.skip_ws();
    if (cur.read_ident() != "ring") cur.fail("expected 'ring'");
    uint32_t p = 0;
    int n = 0;
    MonomialOrder ord = MonomialOrder::grevlex();
    bool saw_p = false, saw_vars = false;
    while (true) {
        cur.skip_ws();
        if (cur.eof()) break;
        std::string key = cur.read_ident();
        cur.expect('=');
        cur.skip_ws();
        if (key == "p") {
            p = uint32_t(cur.read_uint());
            saw_p = true;
        } else if (key == "vars") {
            n = int(cur.read_uint());
            saw_vars = true;
        } else if (key == "order") {
            std::string o = cur.read_ident();
            if (o == "grevlex") {
                ord = MonomialOrder::grevlex();
            } else if (o == "lex") {
                ord = MonomialOrder::lex();
            } else if (o == "elim") {
                cur.expect(':');
                ord = MonomialOrder::elim(int(cur.read_uint()));
            } else {
                cur.fail("unknown order '" + o + "'");
            }
        } else {
            cur.fail("unknown ring key '" + key + "'");
        }
    }
    if (!saw_p || !saw_vars) cur.fail("ring header needs p= and vars=");
    return PolyRing::make(p, n, ord);
}

std::string ring_header(const PolyRing& R) {
    std::ostringstream os;
    os << "ring p=" << R.field().modulus() << " vars=" << R.nvars() << " order=";
    switch (R.order().kind) {
        case OrderKind::Grevlex: os << "grevlex"; break;
        case OrderKind::Lex: os << "lex"; break;
        case OrderKind::Elim: os << "elim:" << R.order().elim_block; break;
        case OrderKind::WGrevlex: os << "grevlex"; break;  // weights are internal-only
    }
    return os.str();
}

Poly parse_poly(RingPtr R, const std::string& text) {
    Cursor cur{text};
    Poly f = read_poly(R, cur, "");
    cur.skip_ws();
    if (!cur.eof()) cur.fail("trailing input after polynomial");
    return f;
}

ParsedIdeal parse_ideal_text(const std::string& text) {
    // first line: ring header
    size_t nl = text.find('\n');
    if (nl == std::string::npos) throw SyntaxError("missing ideal body", 1, 1);
    ParsedIdeal out;
    out.ring = parse_ring_header(text.substr(0, nl));
    Cursor cur{text};
    cur.pos = nl + 1;
    cur.line = 2;
    cur.skip_ws();
    if (cur.read_ident() != "ideal") cur.fail("expected 'ideal'");
    cur.skip_ws();
    out.name = cur.read_ident();
    cur.expect('=');
    for (;;) {
        out.gens.push_back(read_poly(out.ring, cur, ";"));
        cur.skip_ws();
        if (cur.peek() == ';') {
            cur.get();
            cur.skip_ws();
            if (cur.eof()) break;
        } else if (cur.eof()) {
            break;
        } else {
            cur.fail("expected ';' between generators");
        }
    }
    return out;
}

std::string print_ideal_text(const std::string& name, const std::vector<Poly>& gens) {
    if (gens.empty()) throw std::invalid_argument("cannot print an empty generator list");
    std::ostringstream os;
    os << ring_header(*gens[0].ring()) << "\n";
    os << "ideal " << name << " =";
    for (size_t i = 0; i < gens.size(); ++i) os << (i ? "; " : " ") << gens[i].str();
    os << "\n";
    return os.str();
}

}  // namespace fano
