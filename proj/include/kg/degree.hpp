#ifndef KG_DEGREE_HPP
#define KG_DEGREE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kg {

/// Multidegree in N^k. Comparison helpers distinguish the coordinatewise
/// partial order (leq) from the lexicographic total order used for
/// deterministic enumeration (lex_less).
class Degree {
public:
    Degree() = default;
    explicit Degree(int rank) : c_(static_cast<std::size_t>(rank), 0) {
        if (rank < 0) throw std::invalid_argument("Degree: negative rank");
    }
    explicit Degree(std::vector<int> coords) : c_(std::move(coords)) {
        for (int v : c_)
            if (v < 0) throw std::invalid_argument("Degree: negative coordinate");
    }

    static Degree zero(int rank) { return Degree(rank); }
    static Degree unit(int rank, int color) {  // color is 1-based
        Degree d(rank);
        d.c_.at(static_cast<std::size_t>(color - 1)) = 1;
        return d;
    }
    static Degree uniform(int rank, int value) {
        return Degree(std::vector<int>(static_cast<std::size_t>(rank), value));
    }

    int rank() const { return static_cast<int>(c_.size()); }
    int operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    int& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }
    const std::vector<int>& coords() const { return c_; }

    int total() const {
        int s = 0;
        for (int v : c_) s += v;
        return s;
    }
    bool is_zero() const { return total() == 0; }

    friend bool operator==(const Degree& a, const Degree& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Degree& a, const Degree& b) { return a.c_ != b.c_; }

    friend Degree operator+(const Degree& a, const Degree& b) {
        check_rank(a, b);
        Degree r = a;
        for (int i = 0; i < r.rank(); ++i) r[i] += b[i];
        return r;
    }
    /// Coordinatewise difference; requires b <= a.
    friend Degree operator-(const Degree& a, const Degree& b) {
        check_rank(a, b);
        Degree r = a;
        for (int i = 0; i < r.rank(); ++i) {
            r[i] -= b[i];
            if (r[i] < 0) throw std::invalid_argument("Degree: subtraction underflow");
        }
        return r;
    }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < rank(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }

private:
    static void check_rank(const Degree& a, const Degree& b) {
        if (a.rank() != b.rank()) throw std::invalid_argument("Degree: rank mismatch");
    }
    std::vector<int> c_;
};

inline bool leq(const Degree& a, const Degree& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("Degree: rank mismatch");
    for (int i = 0; i < a.rank(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Degree join(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.rank(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Degree meet(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.rank(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline bool lex_less(const Degree& a, const Degree& b) {
    return a.coords() < b.coords();
}

/// Enumerates all m with 0 <= m <= n in lexicographic order.
inline std::vector<Degree> degrees_leq(const Degree& n) {
    std::vector<Degree> out;
    Degree m = Degree::zero(n.rank());
    while (true) {
        out.push_back(m);
        int i = n.rank() - 1;
        while (i >= 0 && m[i] == n[i]) {
            m[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++m[i];
    }
    return out;
}

/// Degree with coordinates in N u {infinity}; infinity is stored as -1 and
/// only touched through the helpers below.
class ExtDegree {
public:
    static constexpr std::int64_t kInf = -1;

    ExtDegree() = default;
    explicit ExtDegree(int rank) : c_(static_cast<std::size_t>(rank), 0) {}
    explicit ExtDegree(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}
    static ExtDegree from(const Degree& d) {
        ExtDegree e(d.rank());
        for (int i = 0; i < d.rank(); ++i) e.c_[static_cast<std::size_t>(i)] = d[i];
        return e;
    }
    static ExtDegree all_infinite(int rank) {
        return ExtDegree(std::vector<std::int64_t>(static_cast<std::size_t>(rank), kInf));
    }

    int rank() const { return static_cast<int>(c_.size()); }
    std::int64_t operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    std::int64_t& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }
    bool is_infinite(int i) const { return (*this)[i] == kInf; }
    bool all_finite() const {
        for (int i = 0; i < rank(); ++i)
            if (is_infinite(i)) return false;
        return true;
    }
    Degree finite_part() const {  // requires all coordinates finite
        std::vector<int> v;
        for (int i = 0; i < rank(); ++i) {
            if (is_infinite(i)) throw std::invalid_argument("ExtDegree: infinite coordinate");
            v.push_back(static_cast<int>((*this)[i]));
        }
        return Degree(v);
    }

    friend bool operator==(const ExtDegree& a, const ExtDegree& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ExtDegree& a, const ExtDegree& b) { return a.c_ != b.c_; }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < rank(); ++i) {
            if (i) s += ",";
            s += is_infinite(i) ? "inf" : std::to_string((*this)[i]);
        }
        return s + ")";
    }

private:
    std::vector<std::int64_t> c_;
};

/// a <= b in (N u {inf})^k; a finite degree on the left is the common case.
inline bool ext_leq(const Degree& a, const ExtDegree& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("ExtDegree: rank mismatch");
    for (int i = 0; i < a.rank(); ++i)
        if (!b.is_infinite(i) && a[i] > b[i]) return false;
    return true;
}

inline bool ext_leq(const ExtDegree& a, const ExtDegree& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("ExtDegree: rank mismatch");
    for (int i = 0; i < a.rank(); ++i) {
        if (a.is_infinite(i) && !b.is_infinite(i)) return false;
        if (!a.is_infinite(i) && !b.is_infinite(i) && a[i] > b[i]) return false;
    }
    return true;
}

/// a - m with infinity absorbing: inf - finite = inf. Requires m <= a.
inline ExtDegree ext_minus(const ExtDegree& a, const Degree& m) {
    if (!ext_leq(m, a)) throw std::invalid_argument("ExtDegree: subtraction out of range");
    ExtDegree r = a;
    for (int i = 0; i < a.rank(); ++i)
        if (!r.is_infinite(i)) r[i] -= m[i];
    return r;
}

/// Coordinatewise min of an extended degree with a finite box.
inline Degree ext_cap(const ExtDegree& a, const Degree& box) {
    Degree r = box;
    for (int i = 0; i < box.rank(); ++i)
        if (!a.is_infinite(i) && a[i] < box[i]) r[i] = static_cast<int>(a[i]);
    return r;
}

/// Parses "2,2" (or "4") into a Degree; every coordinate must be >= 0.
inline Degree parse_degree(const std::string& text, int rank) {
    std::vector<int> v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        if (tok.empty()) throw std::invalid_argument("degree: empty coordinate in '" + text + "'");
        v.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(v.size()) == 1 && rank > 1)
        v.assign(static_cast<std::size_t>(rank), v[0]);
    if (static_cast<int>(v.size()) != rank)
        throw std::invalid_argument("degree: expected " + std::to_string(rank) +
                                    " coordinates in '" + text + "'");
    return Degree(v);
}

}  // namespace kg

template <>
struct std::hash<kg::Degree> {
    std::size_t operator()(const kg::Degree& d) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : d.coords()) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

#endif  // KG_DEGREE_HPP
