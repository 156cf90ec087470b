// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chrslab/haar.hpp"
#include "chrslab/linalg.hpp"
#include "chrslab/rng.hpp"

namespace chrslab {

/// |0^n><psi| + |psi><0^n| + id on the complement of span{|0^n>, |psi>}.
/// Requires <0|psi> = 0 within 1e-12.
Mat swap_oracle_unitary(const PureState& psi);

/// Swap oracle with its cached unitary; the constructor checks Hermiticity,
/// self-inverseness and the defining action on |0^n> and |psi>.
class SwapOracle {
  public:
    explicit SwapOracle(PureState psi);
    const PureState& psi() const { return psi_; }
    const Mat& unitary() const { return u_; }

  private:
    PureState psi_;
    Mat u_;
};

/// Explicit symmetric-subspace projector on `copies` registers of dimension d
/// (average over all register permutations). Exponential in `copies`; test
/// oracle and small-shape reference.
Mat sym_projector_matrix(Eigen::Index d, int copies);

/// Unnormalized projection onto the symmetric subspace of the listed
/// same-dimension registers, matrix-free via the coset recursion
/// Pi_{l+1} = 1/(l+1) sum_i P_(1,i) (id (x) Pi_l).
MultiRegisterState apply_sym_projector(const MultiRegisterState& state,
                                       const std::vector<std::string>& regs);

struct SymProjectResult {
    double p_sym = 0.0;
    std::optional<MultiRegisterState> post_sym;      // renormalized accept branch
    std::optional<MultiRegisterState> post_antisym;  // renormalized reject branch
};

/// Two-outcome symmetric-subspace measurement over the listed registers
/// (at most 8 of them).
SymProjectResult sym_project(const MultiRegisterState& state,
                             const std::vector<std::string>& regs);

/// Coherent form: appends a record qubit, |1> marking the symmetric branch.
MultiRegisterState sym_project_coherent(const MultiRegisterState& state,
                                        const std::vector<std::string>& regs,
                                        const std::string& anc_label);

/// Simulates swap-oracle queries from sample access: per query, one coherent
/// {|0^n><0^n|, id-} measurement with conditional fresh-copy swap-in, a
/// conditional symmetric-subspace measurement over q fresh copies with
/// conditional swap-out to |0^n>, then the mirrored second half with the two
/// ancilla roles exchanged. The reservoir is consumed strictly left to right,
/// 2q+1 copies per query.
///
/// Inputs and outputs are density matrices on (reference (x) R) with the
/// reference dimension passed explicitly (1 = no reference). The channel is
/// evaluated in closed form on the measurement branch tree; the dense
/// coherent circuit below is the cross-check oracle.
class SwapSimulatorSession {
  public:
    SwapSimulatorSession(PureState psi, int q, int query_budget);

    const PureState& psi() const { return psi_; }
    int q() const { return q_; }
    long reservoir_remaining() const { return reservoir_remaining_; }
    long copies_consumed() const { return copies_consumed_; }

    DensityMatrix query(const DensityMatrix& input, Eigen::Index ref_dim);

    /// Final branch weights of the most recent query (diagnostics); they sum
    /// to one within 1e-9, asserted inside query().
    const std::vector<double>& last_branch_weights() const { return last_branch_weights_; }

  private:
    PureState psi_;
    int q_;
    long reservoir_remaining_;
    long copies_consumed_ = 0;
    std::vector<double> last_branch_weights_;
};

/// Single query evaluated by the dense coherent circuit (ancilla-controlled
/// unitaries, tracing at the end). Intended for small shapes; the memory
/// guard fires before allocation.
DensityMatrix swap_query_dense(const PureState& psi, int q, const DensityMatrix& input,
                               Eigen::Index ref_dim, double memory_ceiling_bytes = 4.0 * (1ull << 30));

struct SwapErrorReport {
    double bound = 0.0;     // 6 / (q + 1)
    double max_td = 0.0;    // over all (psi, input) pairs
    double mean_td = 0.0;
    double max_td_zero_input = 0.0;  // |0^n> inputs, exact branch
    /// Distance between psi-averaged simulated and ideal outputs, maximized
    /// over the fixed input set, plus a split-half Monte Carlo error proxy.
    double haar_avg_td = 0.0;
    double haar_avg_mc_error = 0.0;
    int n_psi = 0;
    int n_inputs = 0;
    struct PairRecord {
        int psi_index;
        int input_index;
        double td;
    };
    std::vector<PairRecord> pairs;
};

/// Per-fixed-psi validation of the simulation bound plus the Haar-averaged
/// channel comparison on a fixed input set.
SwapErrorReport swap_error_experiment(Eigen::Index d, int q, int n_psi, int n_inputs,
                                      bool entangle_reference, RngStream& rng,
                                      double memory_ceiling_bytes = 4.0 * (1ull << 30));

struct TwoSimulatorReport {
    double bound_single = 0.0;  // 12 / (q + 1)
    double td_single_mean = 0.0;
    double td_single_max = 0.0;
    double td_double_mean = 0.0;
    double td_double_max = 0.0;
    int n_psi = 0;
    std::vector<double> per_psi_single;
    std::vector<double> per_psi_double;
};

/// Two queries of (|0^n> + |e1>)/sqrt(2): once through a single session
/// queried twice (one shared reservoir) and once through two independent
/// sessions. Distances are to the original input (the exact oracle is an
/// involution), averaged over Haar psi.
TwoSimulatorReport two_simulator_demo(Eigen::Index d, int q, int n_psi, RngStream& rng);

}  // namespace chrslab
