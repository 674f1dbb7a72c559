// Group homology of small finite matrix groups through the normalized bar
// resolution, relative homology of inclusions via the mapping cone, and the
// stability tables built from them.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabverify/groups.hpp"
#include "stabverify/homology.hpp"

namespace sv {

struct BarGuards {
    std::size_t column_guard = 300000;     // max tuple count at the deepest degree
    std::size_t integral_order_cap = 24;   // |G| cap for Z coefficients
    int integral_degree_cap = 3;
};

// Normalized bar chain complex of G up to chain degree `top_degree`.
ChainComplex bar_chain_complex(const FiniteMatrixGroup& g, int top_degree,
                               const BarGuards& guards = {});

// H_i(G; coeff) for i <= max_degree.
std::map<int, HomologyResult> bar_homology(const FiniteMatrixGroup& g, Coeff coeff, int max_degree,
                                           const BarGuards& guards = {});

// H_i(G, H; coeff) via the mapping cone of the inclusion-induced chain map.
std::map<int, HomologyResult> relative_group_homology(const FiniteMatrixGroup& g,
                                                      const FiniteMatrixGroup& h, Coeff coeff,
                                                      int max_degree,
                                                      const BarGuards& guards = {});

struct StabilityCell {
    int n = 0, i = 0;
    std::optional<HomologyResult> dim_prev, dim_cur, rel_i, rel_next;
    std::string verdict;  // consistent | violation | infeasible | outside-range | no-halving
};

struct StabilityTable {
    std::vector<StabilityCell> cells;
    bool any_violation = false;
    std::string csv() const;  // n,i,dim_prev,dim_cur,dim_rel_i,verdict
};

// Stabilization GL_{n-1} -> GL_n by block sum with 1; per-cell feasibility is
// guarded, infeasible cells are marked rather than failed.
StabilityTable stability_table(const Ring* R, int n_max, int i_max, Coeff coeff,
                               const BarGuards& guards = {});

// The block-sum image of GL_{n-1} inside GL_n (fixes e_n, preserves the span
// of the first n-1 coordinates).
FiniteMatrixGroup block_sum_subgroup(const FiniteMatrixGroup& gl_n);

}  // namespace sv
