#pragma once

#include <variant>

#include "dqwalk/quantum.hpp"

namespace dqwalk {

/// Coin states; the walk basis index of |x, c> is 2x + c.
enum class CoinState { right = 0, left = 1 };

inline Eigen::Index basis_index(int x, CoinState c) { return 2 * x + static_cast<int>(c); }

/// 2x2 unitary coin with all four entries nonzero.
class CoinOperator {
public:
    CoinOperator(Complex u11, Complex u12, Complex u21, Complex u22);

    static CoinOperator hadamard();
    /// [[cos t e^{i p1}, sin t e^{i p2}], [-sin t e^{-i p2}, cos t e^{-i p1}]], t in (0, pi/2).
    static CoinOperator parametric(double theta, double phi1, double phi2);

    const ComplexMatrix& matrix() const { return mat_; }

private:
    ComplexMatrix mat_;
};

/// A decoherent walk on the N-cycle with rate 0 < q < 1.
struct WalkSpec {
    int n;
    double q;
    CoinOperator coin;

    WalkSpec(int n, double q, CoinOperator coin);
    Eigen::Index dim() const { return 2 * static_cast<Eigen::Index>(n); }
};

/// Permutation S|x,r> = |x+1,r>, S|x,l> = |x-1,l> on the 2N-dim walk space.
ComplexMatrix build_shift(int n);

/// U = S (I_N (x) C).
ComplexMatrix build_step_unitary(const WalkSpec& spec);

/// The 2N rank-one projectors |x,i><x,i|.
QuantumOperation build_projectors(int n);

/// Phi(rho) = (1-q) U rho U^dagger + q sum_{x,i} P_xi U rho U^dagger P_xi as a GRO
/// with unitaries {(1-q, U)} and noise Kraus set {P_xi U}.
Gro build_channel(const WalkSpec& spec);

/// I_{+-1} = sum_x (-1)^x (|x r><x r| + |x l><x l|).
ComplexMatrix parity_operator(int n);

/// Walker localized at node x; coin either a basis state or the even coin mixture.
struct NodeInit {
    int x = 0;
    enum class Coin { right, left, mixed } coin = Coin::right;
};

/// Equal mixture of nodes x and x+1 (mod N) with a fixed coin; zero overlap with I_{+-1}.
struct ParityBalancedInit {
    int x = 0;
    CoinState coin = CoinState::right;
};

using InitialKind = std::variant<NodeInit, ParityBalancedInit>;

DensityMatrix initial_state(const WalkSpec& spec, const InitialKind& kind);

} // namespace dqwalk
