#include "rhmap/dsl.hpp"

#include <cctype>
#include <sstream>

#include "rhmap/error.hpp"

namespace rhmap::dsl {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) {
            current_ = {Tok::End, "", line_, col_};
            return;
        }
        int line = line_, col = col_;
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                s += text_[pos_++];
                ++col_;
            }
            current_ = {Tok::Ident, std::move(s), line, col};
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                s += text_[pos_++];
                ++col_;
            }
            current_ = {Tok::Number, std::move(s), line, col};
        } else {
            ++pos_;
            ++col_;
            current_ = {Tok::Symbol, std::string(1, c), line, col};
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_{Tok::End, "", 1, 1};
};

[[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw ParseError(msg, at.line, at.col);
}

Token expect_symbol(Lexer& lex, char c) {
    Token t = lex.take();
    if (t.kind != Tok::Symbol || t.text[0] != c)
        fail(t, std::string("expected '") + c + "', found '" + (t.kind == Tok::End ? "<eof>" : t.text) + "'");
    return t;
}

Token expect_ident(Lexer& lex, const char* what) {
    Token t = lex.take();
    if (t.kind != Tok::Ident) fail(t, std::string("expected ") + what);
    return t;
}

bool peek_symbol(const Lexer& lex, char c) {
    return lex.peek().kind == Tok::Symbol && lex.peek().text[0] == c;
}

// integer or p/q; also a signed variant used inside expressions
Rational parse_rational_body(Lexer& lex) {
    Token t = lex.take();
    if (t.kind != Tok::Number) fail(t, "expected a number");
    Integer num{t.text};
    if (peek_symbol(lex, '/')) {
        lex.take();
        Token d = lex.take();
        if (d.kind != Tok::Number) fail(d, "expected a denominator");
        Integer den{d.text};
        if (den == 0) fail(d, "zero denominator");
        return Rational(num, den);
    }
    return Rational(num);
}

int parse_int(Lexer& lex, const char* what) {
    bool neg = false;
    if (peek_symbol(lex, '-')) {
        lex.take();
        neg = true;
    }
    Token t = lex.take();
    if (t.kind != Tok::Number) fail(t, std::string("expected ") + what);
    int v = std::stoi(t.text);
    return neg ? -v : v;
}

// linear combination over labels: 0 | [-] term (('+'|'-') term)*,
// term := [rational '*'] label
std::vector<std::pair<Rational, Token>> parse_combination(Lexer& lex) {
    std::vector<std::pair<Rational, Token>> out;
    bool negative = false;
    if (peek_symbol(lex, '-')) {
        lex.take();
        negative = true;
    }
    while (true) {
        if (lex.peek().kind == Tok::Number) {
            Rational c = parse_rational_body(lex);
            if (c == 0 && !negative && out.empty() && !peek_symbol(lex, '*') && !peek_symbol(lex, '+') &&
                !peek_symbol(lex, '-'))
                return out;  // a lone 0
            if (peek_symbol(lex, '*')) {
                lex.take();
                Token label = expect_ident(lex, "a basis label");
                out.emplace_back(negative ? -c : c, label);
            } else {
                if (c != 0) fail(lex.peek(), "a bare number other than 0 is not a basis element");
            }
        } else {
            Token label = expect_ident(lex, "a basis label");
            out.emplace_back(Rational(negative ? -1 : 1), label);
        }
        if (peek_symbol(lex, '+')) {
            lex.take();
            negative = false;
        } else if (peek_symbol(lex, '-')) {
            lex.take();
            negative = true;
        } else {
            break;
        }
    }
    return out;
}

}  // namespace

AlgebraParse parse_algebra(const std::string& text) {
    Lexer lex(text);
    Token kw = expect_ident(lex, "'algebra'");
    if (kw.text != "algebra") fail(kw, "expected 'algebra'");
    Token name = expect_ident(lex, "an algebra name");
    expect_symbol(lex, '{');

    std::vector<BasisItem> items{{"1", 0}};
    std::vector<std::tuple<Token, Token, std::vector<std::pair<Rational, Token>>>> product_clauses;
    bool saw_basis = false;

    while (!peek_symbol(lex, '}')) {
        Token head = expect_ident(lex, "'basis', 'product' or 'default_product'");
        if (head.text == "basis") {
            saw_basis = true;
            while (true) {
                Token label = expect_ident(lex, "a basis label");
                if (label.text == "1") fail(label, "the unit is implicit and cannot be redeclared");
                expect_symbol(lex, ':');
                int degree = parse_int(lex, "a degree");
                if (degree <= 0) fail(label, "basis degrees must be positive (the unit is implicit)");
                items.push_back({label.text, degree});
                if (peek_symbol(lex, ',')) {
                    lex.take();
                    continue;
                }
                break;
            }
            expect_symbol(lex, ';');
        } else if (head.text == "product") {
            Token a = expect_ident(lex, "a basis label");
            expect_symbol(lex, '*');
            Token b = expect_ident(lex, "a basis label");
            expect_symbol(lex, '=');
            auto rhs = parse_combination(lex);
            expect_symbol(lex, ';');
            product_clauses.emplace_back(a, b, std::move(rhs));
        } else if (head.text == "default_product") {
            Token z = expect_ident(lex, "'zero'");
            if (z.text != "zero") fail(z, "only 'default_product zero;' is supported");
            expect_symbol(lex, ';');
        } else {
            fail(head, "unknown clause '" + head.text + "'");
        }
    }
    expect_symbol(lex, '}');
    if (!saw_basis) fail(lex.peek(), "algebra without a basis clause");

    GradedVectorSpace space;
    try {
        space = GradedVectorSpace::from_items(items);
    } catch (const InvariantError& e) {
        throw ParseError(e.what(), name.line, name.col);
    }

    std::map<std::pair<int, int>, GradedElement> products;
    for (auto& [a, b, rhs] : product_clauses) {
        auto ia = space.find(a.text);
        if (!ia) fail(a, "unknown basis label '" + a.text + "'");
        auto ib = space.find(b.text);
        if (!ib) fail(b, "unknown basis label '" + b.text + "'");
        GradedElement value;
        for (auto& [coeff, label] : rhs) {
            auto ic = space.find(label.text);
            if (!ic) fail(label, "unknown basis label '" + label.text + "'");
            value.add_term(*ic, coeff);
        }
        auto key = std::make_pair(*ia, *ib);
        auto mirror = std::make_pair(*ib, *ia);
        int sign = ((space.degree(*ia) & 1) && (space.degree(*ib) & 1)) ? -1 : 1;
        if (products.count(key)) {
            if (!(products[key] == value)) fail(a, "conflicting product declarations for this pair");
        }
        if (products.count(mirror)) {
            GradedElement expected = value;
            expected *= Rational(sign);
            if (!(products[mirror] == expected))
                fail(a, "product declarations violate graded commutativity for this pair");
        }
        if (!value.is_zero()) products[key] = std::move(value);
    }

    AlgebraParse out{FiniteCdga::make(name.text, std::move(space), std::move(products), {}), {}};
    return out;
}

SullivanParse parse_sullivan(const std::string& text) {
    Lexer lex(text);
    Token kw = expect_ident(lex, "'sullivan'");
    if (kw.text != "sullivan") fail(kw, "expected 'sullivan'");
    Token name = expect_ident(lex, "a model name");
    expect_symbol(lex, '{');

    std::vector<BasisItem> items;
    struct DClause {
        Token gen;
        // parsed polynomial: list of (coefficient, [(label token, power)])
        std::vector<std::pair<Rational, std::vector<std::pair<Token, int>>>> terms;
    };
    std::vector<DClause> d_clauses;

    while (!peek_symbol(lex, '}')) {
        Token head = expect_ident(lex, "'generator' or 'd'");
        if (head.text == "generator") {
            while (true) {
                Token label = expect_ident(lex, "a generator label");
                expect_symbol(lex, ':');
                int degree = parse_int(lex, "a degree");
                if (degree <= 0) fail(label, "generator degree must be positive");
                items.push_back({label.text, degree});
                if (peek_symbol(lex, ',')) {
                    lex.take();
                    continue;
                }
                break;
            }
            expect_symbol(lex, ';');
        } else if (head.text == "d") {
            DClause clause{expect_ident(lex, "a generator label"), {}};
            expect_symbol(lex, '=');
            // polynomial: 0 | [-] term (('+'|'-') term)*
            // term := [rational '*'] factor ('*' factor)*, factor := gen ['^' power]
            bool negative = false;
            if (peek_symbol(lex, '-')) {
                lex.take();
                negative = true;
            }
            if (lex.peek().kind == Tok::Number && lex.peek().text == "0" && !negative) {
                lex.take();
                if (!peek_symbol(lex, ';')) fail(lex.peek(), "expected ';' after 0");
            } else {
                while (true) {
                    Rational coeff = negative ? -1 : 1;
                    negative = false;
                    if (lex.peek().kind == Tok::Number) {
                        coeff *= parse_rational_body(lex);
                        expect_symbol(lex, '*');
                    }
                    std::vector<std::pair<Token, int>> factors;
                    while (true) {
                        Token g = expect_ident(lex, "a generator");
                        int power = 1;
                        if (peek_symbol(lex, '^')) {
                            lex.take();
                            Token p = lex.take();
                            if (p.kind != Tok::Number) fail(p, "expected an exponent");
                            power = std::stoi(p.text);
                            if (power < 1) fail(p, "exponent must be >= 1");
                        }
                        factors.emplace_back(g, power);
                        if (peek_symbol(lex, '*')) {
                            lex.take();
                            continue;
                        }
                        break;
                    }
                    clause.terms.emplace_back(coeff, std::move(factors));
                    if (peek_symbol(lex, '+')) {
                        lex.take();
                    } else if (peek_symbol(lex, '-')) {
                        lex.take();
                        negative = true;
                    } else {
                        break;
                    }
                }
            }
            expect_symbol(lex, ';');
            d_clauses.push_back(std::move(clause));
        } else {
            fail(head, "unknown clause '" + head.text + "'");
        }
    }
    expect_symbol(lex, '}');
    if (items.empty()) fail(name, "sullivan model without generators");

    GradedVectorSpace gens;
    try {
        gens = GradedVectorSpace::from_items(items);
    } catch (const InvariantError& e) {
        throw ParseError(e.what(), name.line, name.col);
    }

    SullivanParse out{SullivanAlgebra::make_unchecked(name.text, gens, std::vector<Polynomial>(gens.dim())), {}};
    std::vector<Polynomial> differential(gens.dim());
    std::vector<bool> seen(gens.dim(), false);
    for (auto& clause : d_clauses) {
        auto gi = gens.find(clause.gen.text);
        if (!gi) fail(clause.gen, "unknown generator '" + clause.gen.text + "'");
        if (seen[*gi]) fail(clause.gen, "duplicate d clause for '" + clause.gen.text + "'");
        seen[*gi] = true;
        Polynomial poly;
        for (auto& [coeff, factors] : clause.terms) {
            Monomial mono;
            bool vanished = false;
            int mono_sign = 1;
            for (auto& [label, power] : factors) {
                auto fi = gens.find(label.text);
                if (!fi) fail(label, "unknown generator '" + label.text + "'");
                Monomial factor{{{*fi, power}}};
                if ((gens.degree(*fi) & 1) && power > 1) {
                    out.warnings.push_back("d " + clause.gen.text + ": odd generator " + label.text +
                                           " squared, term normalizes to zero");
                    vanished = true;
                    break;
                }
                auto prod = monomial_mul(mono, factor, gens);
                if (!prod) {
                    out.warnings.push_back("d " + clause.gen.text + ": odd generator " + label.text +
                                           " squared, term normalizes to zero");
                    vanished = true;
                    break;
                }
                mono = std::move(prod->first);
                mono_sign *= prod->second;
            }
            if (vanished) continue;
            Polynomial term{{mono, coeff * mono_sign}};
            poly_add(poly, term);
        }
        // degree check with location
        for (const auto& [m, c] : poly)
            if (monomial_degree(m, gens) != gens.degree(*gi) + 1)
                fail(clause.gen, "d " + clause.gen.text + " is not homogeneous of degree +1");
        differential[*gi] = std::move(poly);
    }

    out.algebra = SullivanAlgebra::make_unchecked(out.algebra.name(), gens, std::move(differential));
    out.algebra.validate();  // d^2 = 0 and structural checks
    return out;
}

std::string render_algebra(const FiniteCdga& a) {
    const auto& s = a.space();
    std::ostringstream os;
    os << "algebra " << a.name() << " {\n  basis ";
    bool first = true;
    for (int i = 0; i < s.dim(); ++i) {
        if (i == a.unit()) continue;
        if (!first) os << ", ";
        first = false;
        os << s.label(i) << ":" << s.degree(i);
    }
    os << ";\n";
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i; j < s.dim(); ++j) {
            if (i == a.unit() || j == a.unit()) continue;
            GradedElement p = a.mul(i, j);
            if (p.is_zero()) continue;
            os << "  product " << s.label(i) << "*" << s.label(j) << " = ";
            bool f2 = true;
            for (const auto& [idx, c] : p.terms()) {
                Rational a = c;
                if (a < 0) {
                    os << (f2 ? "-" : " - ");
                    a = -a;
                } else if (!f2) {
                    os << " + ";
                }
                f2 = false;
                if (a != 1) os << to_string(a) << "*";
                os << s.label(idx);
            }
            os << ";\n";
        }
    os << "  default_product zero;\n}\n";
    return os.str();
}

std::string render_sullivan(const SullivanAlgebra& s) {
    const auto& gens = s.generators();
    std::ostringstream os;
    os << "sullivan " << s.name() << " {\n  generator ";
    for (int g = 0; g < gens.dim(); ++g) {
        if (g) os << ", ";
        os << gens.label(g) << ":" << gens.degree(g);
    }
    os << ";\n";
    for (int g = 0; g < gens.dim(); ++g)
        os << "  d " << gens.label(g) << " = " << s.render_poly(s.d_of(g)) << ";\n";
    os << "}\n";
    return os.str();
}

GradedElement parse_mc_element(const std::string& text, const MappingSpaceModel& m) {
    Lexer lex(text);
    GradedElement out;
    if (lex.peek().kind == Tok::Number && lex.peek().text == "0") {
        lex.take();
        if (lex.peek().kind != Tok::End) fail(lex.peek(), "unexpected input after 0");
        return out;
    }
    bool negative = false;
    if (peek_symbol(lex, '-')) {
        lex.take();
        negative = true;
    }
    while (true) {
        Rational coeff = negative ? -1 : 1;
        negative = false;
        if (lex.peek().kind == Tok::Number) {
            coeff *= parse_rational_body(lex);
            expect_symbol(lex, '*');
        }
        Token h = expect_ident(lex, "a cohomology basis label");
        expect_symbol(lex, '@');
        Token l = expect_ident(lex, "a dual generator label");
        std::string pair = TensorModel::pair_label(h.text, l.text);
        auto idx = m.space().find(pair);
        if (!idx) fail(h, "unknown model basis element '" + pair + "'");
        out.add_term(*idx, coeff);
        if (peek_symbol(lex, '+')) {
            lex.take();
        } else if (peek_symbol(lex, '-')) {
            lex.take();
            negative = true;
        } else {
            break;
        }
    }
    if (lex.peek().kind != Tok::End) fail(lex.peek(), "unexpected trailing input");
    return out;
}

std::string render_mc_element(const GradedElement& z, const MappingSpaceModel& m) {
    if (z.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : z.terms()) {
        Rational a = c;
        if (a < 0) {
            os << (first ? "-" : " - ");
            a = -a;
        } else if (!first) {
            os << " + ";
        }
        first = false;
        os << to_string(a) << "*" << m.space().label(i);
    }
    return os.str();
}

}  // namespace rhmap::dsl
