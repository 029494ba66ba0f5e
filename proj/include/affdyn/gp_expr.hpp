#pragma once

#include <affdyn/rational.hpp>
#include <affdyn/unipoly.hpp>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace affdyn {

/// Generalized-polynomial expression: a finite tree over rational
/// constants, the integer variable n, +, *, floor and frac. Evaluation
/// at integer n is exact. Trees are immutable and share subexpressions,
/// so the inductive lattice-reduction formulas stay compact; there is
/// deliberately no normal form (generalized polynomials have none) —
/// correctness is defined by exact evaluation.
class GPExpr {
public:
    enum class Kind { Constant, VarN, Add, Mul, Floor, Frac };

    GPExpr() : GPExpr(constant(Rat(0))) {}
    explicit GPExpr(Rat c) : GPExpr(constant(std::move(c))) {}

    static GPExpr constant(Rat c) {
        return GPExpr(std::make_shared<Node>(Node{Kind::Constant, std::move(c), {}}));
    }
    static GPExpr var_n() {
        return GPExpr(std::make_shared<Node>(Node{Kind::VarN, Rat(0), {}}));
    }
    static GPExpr floor_of(GPExpr inner) {
        return GPExpr(std::make_shared<Node>(Node{Kind::Floor, Rat(0), {std::move(inner)}}));
    }
    static GPExpr frac_of(GPExpr inner) {
        return GPExpr(std::make_shared<Node>(Node{Kind::Frac, Rat(0), {std::move(inner)}}));
    }

    Kind kind() const { return node_->kind; }
    const Rat& value() const { return node_->value; }
    const std::vector<GPExpr>& children() const { return node_->children; }

    bool is_constant_zero() const { return kind() == Kind::Constant && value() == 0; }
    bool is_constant_one() const { return kind() == Kind::Constant && value() == 1; }

    friend GPExpr operator+(const GPExpr& a, const GPExpr& b) {
        if (a.is_constant_zero()) return b;
        if (b.is_constant_zero()) return a;
        if (a.kind() == Kind::Constant && b.kind() == Kind::Constant)
            return constant(a.value() + b.value());
        return GPExpr(std::make_shared<Node>(Node{Kind::Add, Rat(0), {a, b}}));
    }
    friend GPExpr operator*(const GPExpr& a, const GPExpr& b) {
        if (a.is_constant_zero() || b.is_constant_zero()) return constant(Rat(0));
        if (a.is_constant_one()) return b;
        if (b.is_constant_one()) return a;
        if (a.kind() == Kind::Constant && b.kind() == Kind::Constant)
            return constant(a.value() * b.value());
        return GPExpr(std::make_shared<Node>(Node{Kind::Mul, Rat(0), {a, b}}));
    }
    friend GPExpr operator-(const GPExpr& a, const GPExpr& b) {
        return a + constant(Rat(-1)) * b;
    }

    /// Horner form of a polynomial in n.
    static GPExpr from_unipoly(const UniPoly& p) {
        if (p.is_zero()) return constant(Rat(0));
        GPExpr acc = constant(p.coeffs().back());
        for (std::size_t i = p.coeffs().size() - 1; i-- > 0;) {
            acc = acc * var_n();
            if (p.coeffs()[i] != 0) acc = acc + constant(p.coeffs()[i]);
        }
        return acc;
    }

    /// Exact value at integer n. The cache is shared across one point
    /// evaluation so common subexpressions are computed once.
    using EvalCache = std::unordered_map<const void*, Rat>;

    Rat eval(const Rat& n, EvalCache& cache) const {
        if (!is_integer(n)) throw std::invalid_argument("GP expressions evaluate at integers only");
        auto hit = cache.find(node_.get());
        if (hit != cache.end()) return hit->second;
        Rat out;
        switch (kind()) {
            case Kind::Constant: out = value(); break;
            case Kind::VarN: out = n; break;
            case Kind::Add: out = node_->children[0].eval(n, cache) + node_->children[1].eval(n, cache); break;
            case Kind::Mul: out = node_->children[0].eval(n, cache) * node_->children[1].eval(n, cache); break;
            case Kind::Floor: out = Rat(rat_floor(node_->children[0].eval(n, cache))); break;
            case Kind::Frac: out = rat_frac(node_->children[0].eval(n, cache)); break;
        }
        cache.emplace(node_.get(), out);
        return out;
    }

    Rat eval(const Rat& n) const {
        EvalCache cache;
        return eval(n, cache);
    }

    std::string to_string() const {
        switch (kind()) {
            case Kind::Constant: return format_rational(value());
            case Kind::VarN: return "n";
            case Kind::Add: return "(" + children()[0].to_string() + " + " + children()[1].to_string() + ")";
            case Kind::Mul: return "(" + children()[0].to_string() + " * " + children()[1].to_string() + ")";
            case Kind::Floor: return "floor(" + children()[0].to_string() + ")";
            case Kind::Frac: return "frac(" + children()[0].to_string() + ")";
        }
        return "?";
    }

private:
    struct Node {
        Kind kind;
        Rat value;
        std::vector<GPExpr> children;
    };

    explicit GPExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    const void* id() const { return node_.get(); }
    std::shared_ptr<const Node> node_;

    friend std::uint64_t gp_degree(const GPExpr&);
};

/// Conservative upper bound on the generalized-polynomial degree:
/// additions take the max, products add, floor/frac pass through.
inline std::uint64_t gp_degree(const GPExpr& e) {
    std::unordered_map<const void*, std::uint64_t> memo;
    auto rec = [&](auto&& self, const GPExpr& x) -> std::uint64_t {
        auto hit = memo.find(x.id());
        if (hit != memo.end()) return hit->second;
        std::uint64_t out = 0;
        switch (x.kind()) {
            case GPExpr::Kind::Constant: out = 0; break;
            case GPExpr::Kind::VarN: out = 1; break;
            case GPExpr::Kind::Add:
                out = std::max(self(self, x.children()[0]), self(self, x.children()[1]));
                break;
            case GPExpr::Kind::Mul:
                out = self(self, x.children()[0]) + self(self, x.children()[1]);
                break;
            case GPExpr::Kind::Floor:
            case GPExpr::Kind::Frac: out = self(self, x.children()[0]); break;
        }
        memo.emplace(x.id(), out);
        return out;
    };
    return rec(rec, e);
}

}  // namespace affdyn
