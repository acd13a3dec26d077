#include "blockent/roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "blockent/parallel.hpp"

namespace blockent {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Eigen::MatrixXcd haar_isometry(Eigen::Index k, Eigen::Index r, Rng& rng) {
    if (r < 1 || r > k) {
        throw NotIsometry("isometry shape " + std::to_string(k) + "x" + std::to_string(r) +
                          " needs 1 <= columns <= rows");
    }
    Eigen::MatrixXcd g(k, r);
    for (Eigen::Index j = 0; j < r; ++j) {
        for (Eigen::Index i = 0; i < k; ++i) {
            g(i, j) = rng.cnormal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(k, r);
    const Eigen::MatrixXcd rm = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    // Phases of the R diagonal are what make plain QR output non-Haar; fold
    // them back into Q.
    for (Eigen::Index j = 0; j < r; ++j) {
        const Complex d = rm(j, j);
        const double mag = std::abs(d);
        if (mag > 0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

Eigen::MatrixXcd Decomposition::reconstruct() const {
    const Eigen::Index dim = dim_s * dim_e;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t n = 0; n < states.size(); ++n) {
        rho += probs[n] * (states[n].amplitudes * states[n].amplitudes.adjoint());
    }
    return rho;
}

namespace {

// Weighted eigenvectors sqrt(lambda) v of the rank-r support, largest
// eigenvalue first. Every decomposition of rho is W U^T for some isometry U.
struct SupportBasis {
    Eigen::MatrixXcd w;  // dim x r
    Eigen::Index rank = 0;
};

SupportBasis support_basis(const ComplexMatrix& rho) {
    const HermitianEigen eig = eig_hermitian(rho);
    const Eigen::Index dim = eig.values.size();
    const double top = eig.values(dim - 1);
    const double cutoff = std::max(0.0, top) * 1e-12;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (eig.values(i) > cutoff) {
            ++rank;
        }
    }
    SupportBasis basis;
    basis.rank = rank;
    basis.w.resize(dim, rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
        const Eigen::Index src = dim - 1 - j;  // descending order
        basis.w.col(j) = std::sqrt(eig.values(src)) * eig.vectors.col(src);
    }
    return basis;
}

Decomposition members_to_decomposition(const Eigen::MatrixXcd& members, Eigen::Index dim_s,
                                       Eigen::Index dim_e) {
    Decomposition dec;
    dec.dim_s = dim_s;
    dec.dim_e = dim_e;
    for (Eigen::Index n = 0; n < members.cols(); ++n) {
        const double p = members.col(n).squaredNorm();
        if (p <= 1e-15) {
            continue;
        }
        dec.probs.push_back(p);
        dec.states.emplace_back(dim_s, dim_e,
                                Eigen::VectorXcd(members.col(n) / std::sqrt(p)));
    }
    return dec;
}

}  // namespace

Decomposition decompose_from_isometry(const ComplexMatrix& rho, Eigen::Index dim_s,
                                      Eigen::Index dim_e, const Eigen::MatrixXcd& isometry) {
    require_valid(BipartiteState(dim_s, dim_e, rho));
    const SupportBasis basis = support_basis(rho);
    if (isometry.cols() != basis.rank) {
        throw RankMismatch("isometry has " + std::to_string(isometry.cols()) +
                           " columns, state rank is " + std::to_string(basis.rank));
    }
    if (isometry.rows() < basis.rank) {
        throw RankMismatch("isometry needs at least rank-many rows");
    }
    const Eigen::MatrixXcd gram =
        isometry.adjoint() * isometry -
        Eigen::MatrixXcd::Identity(isometry.cols(), isometry.cols());
    const double dev = gram.cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw NotIsometry("columns not orthonormal, max |U^dag U - I| = " + std::to_string(dev));
    }
    return members_to_decomposition(basis.w * isometry.transpose(), dim_s, dim_e);
}

double average_entanglement(const Decomposition& dec, const PureMeasure& measure) {
    if (dec.states.size() != dec.probs.size()) {
        throw DimensionMismatch("decomposition has mismatched state and probability counts");
    }
    double total = 0;
    for (std::size_t n = 0; n < dec.states.size(); ++n) {
        total += dec.probs[n] * measure(dec.states[n]);
    }
    return total;
}

namespace {

// Unnormalized-member objective: ||v||^2 * measure(v / ||v||), the member's
// contribution to the decomposition average.
double member_contribution(const Eigen::VectorXcd& v, Eigen::Index dim_s, Eigen::Index dim_e,
                           const PureMeasure& measure) {
    const double p = v.squaredNorm();
    if (p <= 1e-15) {
        return 0;
    }
    return p * measure(PureBipartiteState(dim_s, dim_e, Eigen::VectorXcd(v / std::sqrt(p))));
}

template <class F>
std::pair<double, double> golden_min(const F& f, double lo, double hi, int iters) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? std::pair<double, double>{c, fc} : std::pair<double, double>{d, fd};
}

// In-place round-robin two-member rotations. Any unitary remixing of the
// unnormalized members preserves the reconstruction exactly; rotating one
// pair at a time with a line search is a derivative-free coordinate descent
// on the decomposition average.
double refine_members(std::vector<Eigen::VectorXcd>& members, Eigen::Index dim_s,
                      Eigen::Index dim_e, const PureMeasure& measure, long max_sweeps) {
    const std::size_t count = members.size();
    std::vector<double> contrib(count);
    for (std::size_t n = 0; n < count; ++n) {
        contrib[n] = member_contribution(members[n], dim_s, dim_e, measure);
    }
    double total = std::accumulate(contrib.begin(), contrib.end(), 0.0);
    if (count < 2) {
        return total;
    }

    constexpr double kCoarseTheta[] = {0.02 * M_PI, 0.05 * M_PI, 0.1 * M_PI,
                                       0.2 * M_PI,  0.3 * M_PI,  0.4 * M_PI};
    constexpr double kCoarsePhi[] = {0.0,           M_PI / 3.0,     2.0 * M_PI / 3.0,
                                     M_PI,          4.0 * M_PI / 3.0, 5.0 * M_PI / 3.0};

    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        double sweep_gain = 0;
        for (std::size_t a = 0; a + 1 < count; ++a) {
            for (std::size_t b = a + 1; b < count; ++b) {
                const double base = contrib[a] + contrib[b];
                Eigen::VectorXcd va2, vb2;
                const auto pair_score = [&](double theta, double phi) {
                    const Complex phase{std::cos(phi), std::sin(phi)};
                    const double ct = std::cos(theta);
                    const double st = std::sin(theta);
                    va2 = ct * members[a] + phase * st * members[b];
                    vb2 = -std::conj(phase) * st * members[a] + ct * members[b];
                    return member_contribution(va2, dim_s, dim_e, measure) +
                           member_contribution(vb2, dim_s, dim_e, measure);
                };

                double best_theta = kCoarseTheta[0];
                double best_phi = kCoarsePhi[0];
                double best = std::numeric_limits<double>::infinity();
                for (const double theta : kCoarseTheta) {
                    for (const double phi : kCoarsePhi) {
                        const double score = pair_score(theta, phi);
                        if (score < best) {
                            best = score;
                            best_theta = theta;
                            best_phi = phi;
                        }
                    }
                }
                // The best coarse point seeds the line searches even when it
                // does not yet beat the pair as it stands; the gains that
                // remain near convergence live at angles below the coarse
                // grid resolution.
                const double phi_fixed = best_phi;
                auto [theta_opt, score_theta] = golden_min(
                    [&](double t) { return pair_score(t, phi_fixed); },
                    best_theta - 0.1 * M_PI, best_theta + 0.1 * M_PI, 24);
                if (score_theta < best) {
                    best = score_theta;
                    best_theta = theta_opt;
                }
                auto [phi_opt, score_phi] = golden_min(
                    [&](double p) { return pair_score(best_theta, p); },
                    best_phi - M_PI / 3.0, best_phi + M_PI / 3.0, 24);
                if (score_phi < best) {
                    best = score_phi;
                    best_phi = phi_opt;
                }
                auto [theta_fine, score_fine] = golden_min(
                    [&](double t) { return pair_score(t, best_phi); },
                    best_theta - 0.05 * M_PI, best_theta + 0.05 * M_PI, 24);
                if (score_fine < best) {
                    best = score_fine;
                    best_theta = theta_fine;
                }
                if (best < base) {
                    pair_score(best_theta, best_phi);  // rebuild va2/vb2 at the optimum
                    members[a] = va2;
                    members[b] = vb2;
                    contrib[a] = member_contribution(members[a], dim_s, dim_e, measure);
                    contrib[b] = member_contribution(members[b], dim_s, dim_e, measure);
                    sweep_gain += base - (contrib[a] + contrib[b]);
                }
            }
        }
        total = std::accumulate(contrib.begin(), contrib.end(), 0.0);
        if (sweep_gain < 1e-9) {
            break;
        }
    }
    return total;
}

}  // namespace

RoofResult minimize_roof(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e,
                         const PureMeasure& measure, const RoofBudget& budget,
                         std::uint64_t seed) {
    if (budget.samples < 1) {
        throw BudgetZero("sample budget must be at least 1");
    }
    if (budget.refine_iters < 0 || budget.k_max < 0) {
        throw BudgetZero("budget entries must be nonnegative");
    }
    require_valid(BipartiteState(dim_s, dim_e, rho));
    const SupportBasis basis = support_basis(rho);
    const Eigen::Index r = basis.rank;

    if (r == 1) {
        // Pure state: the only decomposition is the state itself.
        Decomposition dec = members_to_decomposition(basis.w, dim_s, dim_e);
        RoofResult result;
        result.value = average_entanglement(dec, measure);
        result.best = std::move(dec);
        return result;
    }

    const long k_max = budget.k_max == 0 ? static_cast<long>(r * r)
                                         : std::max(budget.k_max, static_cast<long>(r));
    const long span = k_max - static_cast<long>(r) + 1;
    const auto member_count = [&](long i) { return static_cast<Eigen::Index>(r + i % span); };

    std::vector<double> values(static_cast<std::size_t>(budget.samples));
    parallel_for(budget.samples, [&](long i) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        const Eigen::MatrixXcd u = haar_isometry(member_count(i), r, rng);
        const Eigen::MatrixXcd members = basis.w * u.transpose();
        double v = 0;
        for (Eigen::Index n = 0; n < members.cols(); ++n) {
            v += member_contribution(members.col(n), dim_s, dim_e, measure);
        }
        values[static_cast<std::size_t>(i)] = v;
    });

    // Refine a handful of the best candidates; the minimum over sampled
    // values alone is already nonincreasing in the sample budget, refinement
    // only lowers it further.
    std::vector<long> order(values.size());
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        const double va = values[static_cast<std::size_t>(a)];
        const double vb = values[static_cast<std::size_t>(b)];
        return va != vb ? va < vb : a < b;
    });
    const std::size_t candidates = std::min<std::size_t>(4, order.size());

    double best_value = values[static_cast<std::size_t>(order[0])];
    std::vector<Eigen::VectorXcd> best_members;
    for (std::size_t c = 0; c < candidates; ++c) {
        const long i = order[c];
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        const Eigen::MatrixXcd u = haar_isometry(member_count(i), r, rng);
        const Eigen::MatrixXcd matrix = basis.w * u.transpose();
        std::vector<Eigen::VectorXcd> members(static_cast<std::size_t>(matrix.cols()));
        for (Eigen::Index n = 0; n < matrix.cols(); ++n) {
            members[static_cast<std::size_t>(n)] = matrix.col(n);
        }
        const double refined =
            refine_members(members, dim_s, dim_e, measure, budget.refine_iters);
        if (refined < best_value || best_members.empty()) {
            best_value = std::min(best_value, refined);
            best_members = std::move(members);
        }
    }

    Eigen::MatrixXcd packed(dim_s * dim_e, static_cast<Eigen::Index>(best_members.size()));
    for (std::size_t n = 0; n < best_members.size(); ++n) {
        packed.col(static_cast<Eigen::Index>(n)) = best_members[n];
    }
    RoofResult result;
    result.value = best_value;
    result.best = members_to_decomposition(packed, dim_s, dim_e);
    return result;
}

SuperpositionSplit split_superposition(const PureBipartiteState& psi,
                                       const std::vector<Eigen::Index>& set1,
                                       const std::vector<Eigen::Index>& set2) {
    const Eigen::Index dim_s = psi.dim_s;
    const Eigen::Index dim_e = psi.dim_e;
    std::vector<int> tag(static_cast<std::size_t>(dim_e), 0);
    const auto mark = [&](const std::vector<Eigen::Index>& set, int label) {
        for (const Eigen::Index e : set) {
            if (e < 0 || e >= dim_e) {
                throw PartitionInvalid("E index " + std::to_string(e) + " outside [0, " +
                                       std::to_string(dim_e) + ")");
            }
            if (tag[static_cast<std::size_t>(e)] != 0) {
                throw PartitionInvalid("E index " + std::to_string(e) + " in both sets");
            }
            tag[static_cast<std::size_t>(e)] = label;
        }
    };
    mark(set1, 1);
    mark(set2, 2);

    Eigen::VectorXcd v1 = Eigen::VectorXcd::Zero(dim_s * dim_e);
    Eigen::VectorXcd v2 = Eigen::VectorXcd::Zero(dim_s * dim_e);
    double residual = 0;
    for (Eigen::Index s = 0; s < dim_s; ++s) {
        for (Eigen::Index e = 0; e < dim_e; ++e) {
            const Complex amp = psi.amplitudes(s * dim_e + e);
            switch (tag[static_cast<std::size_t>(e)]) {
                case 1:
                    v1(s * dim_e + e) = amp;
                    break;
                case 2:
                    v2(s * dim_e + e) = amp;
                    break;
                default:
                    residual += std::norm(amp);
            }
        }
    }
    if (residual > 1e-12) {
        throw PartitionInvalid("state has weight " + std::to_string(residual) +
                               " outside the two sets");
    }

    const double n1 = v1.norm();
    const double n2 = v2.norm();
    if (n1 < 1e-12 || n2 < 1e-12) {
        throw EmptyBranch("state is confined to one side of the partition");
    }

    SuperpositionSplit split;
    split.dim_s = dim_s;
    split.dim_e = dim_e;
    split.alpha = n1;
    split.beta = n2;
    split.psi1 = PureBipartiteState(dim_s, dim_e, Eigen::VectorXcd(v1 / n1));
    split.psi2 = PureBipartiteState(dim_s, dim_e, Eigen::VectorXcd(v2 / n2));

    const auto branch_schmidt = [&](const PureBipartiteState& branch, Eigen::VectorXd& x,
                                    std::vector<Eigen::VectorXcd>& phi) {
        x.resize(dim_s);
        phi.assign(static_cast<std::size_t>(dim_s), Eigen::VectorXcd::Zero(dim_e));
        for (Eigen::Index s = 0; s < dim_s; ++s) {
            Eigen::VectorXcd row = branch.amplitudes.segment(s * dim_e, dim_e);
            const double weight = row.norm();
            x(s) = weight;  // phases absorbed into phi, x real and nonnegative
            if (weight > 1e-15) {
                phi[static_cast<std::size_t>(s)] = row / weight;
            }
        }
    };
    branch_schmidt(split.psi1, split.x1, split.phi1);
    branch_schmidt(split.psi2, split.x2, split.phi2);
    return split;
}

namespace {

Eigen::VectorXcd recombine(const SuperpositionSplit& split) {
    return split.alpha * split.psi1.amplitudes + split.beta * split.psi2.amplitudes;
}

double mixed_branch_average(const SuperpositionSplit& split) {
    const double a2 = std::norm(split.alpha);
    const double b2 = std::norm(split.beta);
    return a2 * linear_entropy_entanglement(split.psi1) +
           b2 * linear_entropy_entanglement(split.psi2);
}

}  // namespace

IdentityCheck difference_identity_check(const SuperpositionSplit& split) {
    if (split.dim_s != 2) {
        throw DimensionMismatch("closed form applies to a qubit QS only");
    }
    const PureBipartiteState psi(split.dim_s, split.dim_e, recombine(split));
    IdentityCheck check;
    check.lhs = linear_entropy_entanglement(psi) - mixed_branch_average(split);

    const double a2 = std::norm(split.alpha);
    const double b2 = std::norm(split.beta);
    const double x1 = split.x1(0);
    const double y1 = split.x1(1);
    const double x2 = split.x2(0);
    const double y2 = split.x2(1);
    const Complex ov1 = split.phi1[0].dot(split.phi1[1]);
    const Complex ov2 = split.phi2[0].dot(split.phi2[1]);
    const double pops = x1 * x1 - x2 * x2;
    const Complex coherence = x1 * y1 * ov1 - x2 * y2 * ov2;
    check.rhs = 4.0 * a2 * b2 * (pops * pops + std::norm(coherence));
    return check;
}

double qudit_difference_check(const SuperpositionSplit& split) {
    const PureBipartiteState psi(split.dim_s, split.dim_e, recombine(split));
    return linear_entropy_entanglement(psi) - mixed_branch_average(split);
}

Decomposition strip_cross_terms(const Decomposition& dec,
                                const std::array<std::vector<Eigen::Index>, 2>& e_partition) {
    if (dec.states.empty()) {
        return dec;
    }
    const Eigen::Index dim_s = dec.dim_s;
    const Eigen::Index dim_e = dec.dim_e;
    std::vector<int> tag(static_cast<std::size_t>(dim_e), 0);
    for (int side = 0; side < 2; ++side) {
        for (const Eigen::Index e : e_partition[static_cast<std::size_t>(side)]) {
            if (e < 0 || e >= dim_e) {
                throw PartitionInvalid("E index " + std::to_string(e) + " out of range");
            }
            if (tag[static_cast<std::size_t>(e)] != 0) {
                throw PartitionInvalid("E index " + std::to_string(e) + " in both sets");
            }
            tag[static_cast<std::size_t>(e)] = side + 1;
        }
    }
    for (Eigen::Index e = 0; e < dim_e; ++e) {
        if (tag[static_cast<std::size_t>(e)] == 0) {
            throw PartitionInvalid("E index " + std::to_string(e) + " not in either set");
        }
    }

    const Eigen::MatrixXcd rho = dec.reconstruct();
    double cross = 0;
    for (Eigen::Index s = 0; s < dim_s; ++s) {
        for (Eigen::Index t = 0; t < dim_s; ++t) {
            for (Eigen::Index e = 0; e < dim_e; ++e) {
                for (Eigen::Index f = 0; f < dim_e; ++f) {
                    if (tag[static_cast<std::size_t>(e)] != tag[static_cast<std::size_t>(f)]) {
                        cross = std::max(cross, std::abs(rho(s * dim_e + e, t * dim_e + f)));
                    }
                }
            }
        }
    }
    if (cross > 1e-8) {
        throw NotBlockDiagonal("reconstruction couples the two sets, max cross entry " +
                               std::to_string(cross));
    }

    Decomposition out;
    out.dim_s = dim_s;
    out.dim_e = dim_e;
    for (std::size_t n = 0; n < dec.states.size(); ++n) {
        const double p = dec.probs[n];
        try {
            const SuperpositionSplit split =
                split_superposition(dec.states[n], e_partition[0], e_partition[1]);
            out.states.push_back(split.psi1);
            out.probs.push_back(p * std::norm(split.alpha));
            out.states.push_back(split.psi2);
            out.probs.push_back(p * std::norm(split.beta));
        } catch (const EmptyBranch&) {
            // Member already confined to one side; keep it as is.
            out.states.push_back(dec.states[n]);
            out.probs.push_back(p);
        }
    }
    return out;
}

}  // namespace blockent
