#include "lindisk/parser.hpp"

#include "lindisk/errors.hpp"

#include <cctype>

namespace lindisk {

namespace {

struct Token {
    enum class Kind { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Kind::End, ""};
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            tok_ = {Token::Kind::Number, src_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Kind::Name, src_.substr(start, pos_ - start)};
            return;
        }
        ++pos_;
        switch (c) {
        case '+': tok_ = {Token::Kind::Plus, "+"}; return;
        case '-': tok_ = {Token::Kind::Minus, "-"}; return;
        case '*': tok_ = {Token::Kind::Star, "*"}; return;
        case '/': tok_ = {Token::Kind::Slash, "/"}; return;
        case '^': tok_ = {Token::Kind::Caret, "^"}; return;
        case '(': tok_ = {Token::Kind::LParen, "("}; return;
        case ')': tok_ = {Token::Kind::RParen, ")"}; return;
        default: throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    Token tok_{Token::Kind::End, ""};
};

class ElementParser {
public:
    ElementParser(const std::string& text, FieldPtr field, const Bindings& bindings,
                  long precision)
        : lex_(text), field_(std::move(field)), bindings_(bindings), precision_(precision) {}

    PadicElement run() {
        PadicElement v = expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input at '" + lex_.peek().text + "'");
        return v;
    }

private:
    PadicElement expr() {
        PadicElement v = term();
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            Token op = lex_.take();
            PadicElement rhs = term();
            v = op.kind == Token::Kind::Plus ? v.add(rhs) : v.sub(rhs);
        }
        return v;
    }

    PadicElement term() {
        PadicElement v = factor();
        while (lex_.peek().kind == Token::Kind::Star || lex_.peek().kind == Token::Kind::Slash) {
            Token op = lex_.take();
            PadicElement rhs = factor();
            v = op.kind == Token::Kind::Star ? v.mul(rhs) : v.mul(rhs.invert());
        }
        return v;
    }

    PadicElement factor() {
        PadicElement v = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            Token n = lex_.take();
            if (n.kind != Token::Kind::Number)
                throw ParseError("exponent must be an unsigned integer");
            Integer z(n.text);
            if (!z.fits_ulong_p())
                throw ParseError("exponent too large");
            v = v.pow(z.get_ui());
        }
        return v;
    }

    PadicElement atom() {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Kind::Number: {
            Integer z(t.text);
            if (z == 0)
                return PadicElement::zero(field_);
            return PadicElement::from_integer(field_, z, precision_);
        }
        case Token::Kind::Name:
            if (t.text == "p")
                return PadicElement::from_integer(field_, field_->p(), precision_);
            if (t.text == "pi")
                return PadicElement::uniformizer(field_, precision_);
            {
                auto it = bindings_.find(t.text);
                if (it == bindings_.end())
                    throw ParseError("unbound name '" + t.text + "'");
                if (!it->second.field()->same_as(*field_))
                    throw FieldMismatch("binding '" + t.text + "' lives in a different field");
                return it->second;
            }
        case Token::Kind::LParen: {
            PadicElement v = expr();
            Token r = lex_.take();
            if (r.kind != Token::Kind::RParen)
                throw ParseError("expected ')'");
            return v;
        }
        default:
            throw ParseError("unexpected token '" + t.text + "'");
        }
    }

    Lexer lex_;
    FieldPtr field_;
    const Bindings& bindings_;
    long precision_;
};

class MapParser {
public:
    static constexpr long kMaxDegree = 1 << 16;

    MapParser(const std::string& text, FieldPtr field, const Bindings& bindings, long precision)
        : lex_(text), field_(std::move(field)), bindings_(bindings), precision_(precision) {}

    PowerSeries run() {
        PowerSeries v = expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input at '" + lex_.peek().text + "'");
        return v;
    }

private:
    PowerSeries constant(const PadicElement& c) {
        return PowerSeries(field_, {c}, true);
    }

    void check_degree(const PowerSeries& s) {
        if (s.truncation() > kMaxDegree)
            throw ParseError("map polynomial degree exceeds " + std::to_string(kMaxDegree));
    }

    PowerSeries expr() {
        PowerSeries v = term();
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            Token op = lex_.take();
            PowerSeries rhs = term();
            v = op.kind == Token::Kind::Plus ? v.add(rhs) : v.sub(rhs);
        }
        return v;
    }

    PowerSeries term() {
        PowerSeries v = factor();
        while (lex_.peek().kind == Token::Kind::Star || lex_.peek().kind == Token::Kind::Slash) {
            Token op = lex_.take();
            PowerSeries rhs = factor();
            if (op.kind == Token::Kind::Star) {
                v = v.mul(rhs);
                check_degree(v);
            } else {
                if (rhs.truncation() != 0)
                    throw ParseError("division by an expression containing x");
                v = v.scale(rhs.coeff(0).invert());
            }
        }
        return v;
    }

    PowerSeries factor() {
        PowerSeries v = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            Token n = lex_.take();
            if (n.kind != Token::Kind::Number)
                throw ParseError("exponent must be an unsigned integer");
            Integer z(n.text);
            if (!z.fits_ulong_p() || Integer(z * v.truncation()) > kMaxDegree)
                throw ParseError("exponent too large");
            v = v.pow(z.get_ui());
            check_degree(v);
        }
        return v;
    }

    PowerSeries atom() {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Kind::Number:
            if (Integer(t.text) == 0)
                return constant(PadicElement::zero(field_));
            return constant(PadicElement::from_integer(field_, Integer(t.text), precision_));
        case Token::Kind::Name:
            if (t.text == "x")
                return PowerSeries::identity(field_, precision_);
            if (t.text == "p")
                return constant(PadicElement::from_integer(field_, field_->p(), precision_));
            if (t.text == "pi")
                return constant(PadicElement::uniformizer(field_, precision_));
            {
                auto it = bindings_.find(t.text);
                if (it == bindings_.end())
                    throw ParseError("unbound name '" + t.text + "'");
                if (!it->second.field()->same_as(*field_))
                    throw FieldMismatch("binding '" + t.text + "' lives in a different field");
                return constant(it->second);
            }
        case Token::Kind::LParen: {
            PowerSeries v = expr();
            Token r = lex_.take();
            if (r.kind != Token::Kind::RParen)
                throw ParseError("expected ')'");
            return v;
        }
        default:
            throw ParseError("unexpected token '" + t.text + "'");
        }
    }

    Lexer lex_;
    FieldPtr field_;
    const Bindings& bindings_;
    long precision_;
};

} // namespace

PadicElement parse_element(const std::string& text, const FieldPtr& field,
                           const Bindings& bindings) {
    return parse_element_at(text, field, bindings, field->default_precision());
}

PadicElement parse_element_at(const std::string& text, const FieldPtr& field,
                              const Bindings& bindings, long precision) {
    return ElementParser(text, field, bindings, precision).run();
}

PowerSeries parse_map(const std::string& text, const FieldPtr& field, const Bindings& bindings) {
    return parse_map_at(text, field, bindings, field->default_precision());
}

PowerSeries parse_map_at(const std::string& text, const FieldPtr& field,
                         const Bindings& bindings, long precision) {
    return MapParser(text, field, bindings, precision).run();
}

} // namespace lindisk
