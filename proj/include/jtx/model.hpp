#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jtx {

/// Jacobi parameters of a finite restriction: sites 1..n, with a[k] coupling
/// sites k+1 and k+2 (0-based storage of a_1..a_{n} and b_1..b_n).
struct JacobiSlice {
    std::vector<double> a;  // a_1 .. a_n (or fewer for finite lists)
    std::vector<double> b;  // b_1 .. b_n
};

enum class ModelKind { ExplicitList, Free, Anderson, AlmostMathieu, Fibonacci };

std::string to_string(ModelKind kind);

/// Half-line Jacobi parameter generator. Generated kinds are conceptually
/// infinite and deterministic in (kind, params, seed); explicit lists are
/// finite. All parameters are checked against a boundedness cap.
class JacobiModel {
public:
    struct AndersonParams {
        double width = 1.0;
        std::uint64_t seed = 0;
    };
    struct AlmostMathieuParams {
        double coupling = 0.0;
        double alpha = 0.0;
        double theta = 0.0;
    };
    struct FibonacciParams {
        double coupling = 0.0;
        double alpha = 0.0;
    };

    static JacobiModel explicit_list(std::vector<double> a, std::vector<double> b);
    static JacobiModel free_chain();
    static JacobiModel anderson(double width, std::uint64_t seed);
    static JacobiModel almost_mathieu(double coupling, double alpha, double theta);
    static JacobiModel fibonacci(double coupling);

    ModelKind kind() const { return kind_; }

    /// Number of diagonal entries available; nullopt when infinite.
    std::optional<std::size_t> length() const;

    /// Known exact periodicity of the parameter sequence, if any.
    std::optional<std::size_t> period() const;

    /// Off-diagonal a_n (couples sites n and n+1), 1-based. O(n) for seeded
    /// kinds; prefer slice() in loops.
    double a(std::size_t n) const;
    /// Diagonal b_n, 1-based.
    double b(std::size_t n) const;

    /// Materialize a_1..a_m and b_1..b_n where m = n for generated kinds and
    /// m = min(n, stored) for explicit lists.
    JacobiSlice slice(std::size_t n) const;

    double bound() const { return bound_; }
    void set_bound(double bound);

    const AndersonParams& anderson_params() const { return anderson_; }
    const AlmostMathieuParams& almost_mathieu_params() const { return mathieu_; }
    const FibonacciParams& fibonacci_params() const { return fibonacci_; }
    const std::vector<double>& stored_a() const { return a_; }
    const std::vector<double>& stored_b() const { return b_; }

private:
    JacobiModel() = default;
    void check_bound(double a_n, double b_n, std::size_t n) const;

    ModelKind kind_ = ModelKind::Free;
    std::vector<double> a_, b_;  // explicit lists only
    AndersonParams anderson_{};
    AlmostMathieuParams mathieu_{};
    FibonacciParams fibonacci_{};
    double bound_ = 1e3;
};

/// Finite probability measure: strictly increasing support points with
/// positive weights summing to one.
struct DiscreteMeasure {
    std::vector<double> points;
    std::vector<double> weights;

    DiscreteMeasure(std::vector<double> pts, std::vector<double> wts);

    std::size_t size() const { return points.size(); }
};

/// Period-L Jacobi parameters; the last off-diagonal a_L is the internal
/// coupling lambda_S. Extension rule: a_{x+nL} = a_x, b_{x+nL} = b_x.
struct PeriodicJacobi {
    std::size_t L = 0;
    std::vector<double> a;  // a_1 .. a_L with a_L = lambda_S
    std::vector<double> b;  // b_1 .. b_L
    double lambda_S = 0.0;

    PeriodicJacobi(std::vector<double> a_in, std::vector<double> b_in);

    /// Parameter block of the reversed (left half-line) orientation.
    PeriodicJacobi reversed() const;
};

/// Period-L model from the first L sites of a sample, with a_L := lambda_S.
PeriodicJacobi periodize(const JacobiModel& sample, std::size_t L, double lambda_S);

/// N periods of `per` truncated to N*L sites (no coupling past the last site).
JacobiModel restrict_repeated(const PeriodicJacobi& per, std::size_t N);

}  // namespace jtx
