#pragma once

#include <cctype>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/grid.hpp"
#include "morse_persist/interval.hpp"

namespace morse_persist {

// Polynomial/affine map expressions over box coordinates: constants,
// coordinates, +, -, *, integer powers.  Division is folded at parse time
// and only allowed between constants, which keeps interval evaluation exact
// per operation and inclusion-monotone overall.
class MapSpec {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        enum class Kind { Constant, Coordinate, Add, Sub, Mul, Neg, Pow } kind;
        Rational value;       // Constant
        int coordinate = 0;   // Coordinate
        unsigned exponent = 0;  // Pow
        NodePtr a, b;
    };

    MapSpec() = default;
    MapSpec(std::vector<NodePtr> components, int dim, std::string source)
        : components_(std::move(components)), dim_(dim), source_(std::move(source)) {}

    // Components separated by ';', e.g. "y; x*(1-y)" for a 2-D map.
    // Coordinates: x,y,z (dims 0..2) or x0,x1,... in any dimension.
    static MapSpec parse(const std::string& text);

    int dim() const { return dim_; }
    const std::string& source() const { return source_; }

    std::vector<Rational> eval_point(std::span<const Rational> p) const {
        check_dim(static_cast<int>(p.size()));
        std::vector<Rational> out;
        out.reserve(components_.size());
        for (const auto& c : components_) out.push_back(eval_point_node(*c, p));
        return out;
    }

    // Enclosure of the image of a box, one interval per output coordinate.
    std::vector<Interval> eval_box(const Box& box) const {
        check_dim(box.dim());
        std::vector<Interval> args;
        args.reserve(box.dim());
        for (int a = 0; a < box.dim(); ++a) args.push_back(box.axis(a));
        std::vector<Interval> out;
        out.reserve(components_.size());
        for (const auto& c : components_) out.push_back(eval_interval_node(*c, args));
        return out;
    }

private:
    void check_dim(int n) const {
        if (n != dim_)
            throw ConfigError("map spec '" + source_ + "' expects dimension " +
                              std::to_string(dim_) + ", got " + std::to_string(n));
    }

    static Rational eval_point_node(const Node& n, std::span<const Rational> p) {
        switch (n.kind) {
            case Node::Kind::Constant: return n.value;
            case Node::Kind::Coordinate: return p[n.coordinate];
            case Node::Kind::Add: return eval_point_node(*n.a, p) + eval_point_node(*n.b, p);
            case Node::Kind::Sub: return eval_point_node(*n.a, p) - eval_point_node(*n.b, p);
            case Node::Kind::Mul: return eval_point_node(*n.a, p) * eval_point_node(*n.b, p);
            case Node::Kind::Neg: return -eval_point_node(*n.a, p);
            case Node::Kind::Pow: {
                Rational base = eval_point_node(*n.a, p);
                Rational r(1);
                for (unsigned i = 0; i < n.exponent; ++i) r *= base;
                return r;
            }
        }
        throw InternalError("unreachable map spec node");
    }

    static Interval eval_interval_node(const Node& n, std::span<const Interval> args) {
        switch (n.kind) {
            case Node::Kind::Constant: return Interval::point(n.value);
            case Node::Kind::Coordinate: return args[n.coordinate];
            case Node::Kind::Add:
                return eval_interval_node(*n.a, args) + eval_interval_node(*n.b, args);
            case Node::Kind::Sub:
                return eval_interval_node(*n.a, args) - eval_interval_node(*n.b, args);
            case Node::Kind::Mul:
                return eval_interval_node(*n.a, args) * eval_interval_node(*n.b, args);
            case Node::Kind::Neg: return -eval_interval_node(*n.a, args);
            case Node::Kind::Pow: return pow(eval_interval_node(*n.a, args), n.exponent);
        }
        throw InternalError("unreachable map spec node");
    }

    std::vector<NodePtr> components_;
    int dim_ = 0;
    std::string source_;
};

namespace detail {

class MapSpecParser {
public:
    MapSpecParser(const std::string& text, int* max_coord)
        : text_(text), max_coord_(max_coord) {}

    MapSpec::NodePtr parse_component() {
        auto node = parse_expr();
        skip_ws();
        if (pos_ != text_.size() && text_[pos_] != ';') fail("unexpected trailing input");
        return node;
    }

    bool at_separator() {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ';';
    }
    void consume_separator() { ++pos_; }
    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

private:
    using Node = MapSpec::Node;
    using NodePtr = MapSpec::NodePtr;

    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError("map spec parse error at position " + std::to_string(pos_) +
                          ": " + why);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    static bool is_constant(const NodePtr& n) { return n->kind == Node::Kind::Constant; }

    NodePtr constant(Rational v) {
        Node n;
        n.kind = Node::Kind::Constant;
        n.value = std::move(v);
        return make(std::move(n));
    }

    NodePtr binary(Node::Kind kind, NodePtr a, NodePtr b) {
        if (is_constant(a) && is_constant(b)) {
            switch (kind) {
                case Node::Kind::Add: return constant(a->value + b->value);
                case Node::Kind::Sub: return constant(a->value - b->value);
                case Node::Kind::Mul: return constant(a->value * b->value);
                default: break;
            }
        }
        Node n;
        n.kind = kind;
        n.a = std::move(a);
        n.b = std::move(b);
        return make(std::move(n));
    }

    NodePtr parse_expr() {
        skip_ws();
        bool negate = false;
        while (true) {
            if (eat('+')) continue;
            if (eat('-')) {
                negate = !negate;
                continue;
            }
            break;
        }
        NodePtr node = parse_term();
        if (negate) {
            if (is_constant(node)) {
                node = constant(-node->value);
            } else {
                Node n;
                n.kind = Node::Kind::Neg;
                n.a = std::move(node);
                node = make(std::move(n));
            }
        }
        while (true) {
            if (eat('+'))
                node = binary(Node::Kind::Add, node, parse_term());
            else if (eat('-'))
                node = binary(Node::Kind::Sub, node, parse_term());
            else
                break;
        }
        return node;
    }

    NodePtr parse_term() {
        NodePtr node = parse_factor();
        while (true) {
            if (eat('*')) {
                node = binary(Node::Kind::Mul, node, parse_factor());
            } else if (eat('/')) {
                NodePtr d = parse_factor();
                if (!is_constant(d)) fail("division is only supported by constants");
                if (d->value == 0) fail("division by zero");
                if (is_constant(node)) {
                    node = constant(node->value / d->value);
                } else {
                    node = binary(Node::Kind::Mul, node, constant(Rational(1) / d->value));
                }
            } else {
                break;
            }
        }
        return node;
    }

    NodePtr parse_factor() {
        NodePtr base = parse_base();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == start) fail("expected a nonnegative integer exponent");
            unsigned exp = static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
            if (is_constant(base)) {
                Rational r(1);
                for (unsigned i = 0; i < exp; ++i) r *= base->value;
                return constant(std::move(r));
            }
            Node n;
            n.kind = Node::Kind::Pow;
            n.exponent = exp;
            n.a = std::move(base);
            return make(std::move(n));
        }
        return base;
    }

    NodePtr parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-' || c == '+') {
            // unary sign binds to the factor, not the rest of the expression
            ++pos_;
            NodePtr inner = parse_factor();
            if (c == '+') return inner;
            if (is_constant(inner)) return constant(-inner->value);
            Node n;
            n.kind = Node::Kind::Neg;
            n.a = std::move(inner);
            return make(std::move(n));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            return constant(parse_rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            int coord = -1;
            if (name == "x")
                coord = 0;
            else if (name == "y")
                coord = 1;
            else if (name == "z")
                coord = 2;
            else if (name.size() >= 2 && name[0] == 'x')
                coord = std::stoi(name.substr(1));
            if (coord < 0) fail("unknown variable '" + name + "'");
            *max_coord_ = std::max(*max_coord_, coord);
            Node n;
            n.kind = Node::Kind::Coordinate;
            n.coordinate = coord;
            return make(std::move(n));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    int* max_coord_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MapSpec MapSpec::parse(const std::string& text) {
    int max_coord = -1;
    detail::MapSpecParser parser(text, &max_coord);
    std::vector<NodePtr> components;
    while (true) {
        components.push_back(parser.parse_component());
        if (parser.at_separator()) {
            parser.consume_separator();
            continue;
        }
        break;
    }
    if (!parser.at_end())
        throw ConfigError("map spec parse error: trailing input in '" + text + "'");
    int dim = static_cast<int>(components.size());
    if (max_coord >= dim)
        throw ConfigError("map spec '" + text + "' uses coordinate " +
                          std::to_string(max_coord) + " but has only " +
                          std::to_string(dim) + " component(s)");
    return MapSpec(std::move(components), dim, text);
}

}  // namespace morse_persist
