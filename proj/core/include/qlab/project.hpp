#pragma once

#include <utility>

#include "qlab/field.hpp"

namespace qlab {

// Smooth radial cutoffs: psi(r) = 1 for r <= 2, 0 for r >= 4, monotone in
// between; rho = 1 - psi; beta supported in (1/2, 2) with
// sum_j beta(r / 2^j) = 1 for r > 0.
struct CutoffProfile {
    // C-infinity monotone step from 1 to 0 on (lo, hi).
    static double smooth_step(double r, double lo, double hi);

    double psi(double r) const { return smooth_step(r, 2.0, 4.0); }
    double rho(double r) const { return 1.0 - psi(r); }
    // beta(r) = step(r; 1, 2) - step(2r; 1, 2); telescoping gives the dyadic
    // partition of unity.
    double beta(double r) const {
        return smooth_step(r, 1.0, 2.0) - smooth_step(2.0 * r, 1.0, 2.0);
    }
};

// Rank projection E_nu (keeps canonical ranks 0..nu inclusive) and its
// remainder R_nu = I - E_nu. Exact coefficient split.
std::pair<SpectralField, SpectralField> project_rank(const SpectralField& f, int64_t nu);

// Keeps modes with frequency in the half-open window [a, b); b may be
// infinity. chi_k = project_window(f, k, k+1); the tail projector R_lambda is
// project_window(f, 2*lambda, infinity).
SpectralField project_window(const SpectralField& f, double a, double b);

// Smooth low/high split u = L_lambda u + H_lambda u with L = psi(P/lambda),
// H = rho(P/lambda); exact reconstruction by construction.
std::pair<SpectralField, SpectralField> smooth_split(const SpectralField& f, double lambda,
                                                     const CutoffProfile& profile = {});

// Littlewood-Paley block S_j f = beta(P / 2^j) f.
SpectralField lp_block(const SpectralField& f, int j, const CutoffProfile& profile = {});

enum class RemainderNorm { HMinus1, L2 };

inline constexpr int64_t kRankUnreachable = -1;

// Smallest nu with ||R_nu h|| < eps in the requested norm; kRankUnreachable
// if no nu within h's band achieves it.
int64_t min_rank_for_tolerance(const SpectralField& h, double eps, RemainderNorm norm);

// Canonical rank of a mode of the model (position in the order of
// enumerate_modes).
int64_t rank_of_mode(const SpectralModel& model, const ModeKey& key);

} // namespace qlab
