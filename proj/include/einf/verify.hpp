#pragma once

#include "einf/soperad.hpp"

#include <string>
#include <vector>

namespace einf {

// Outcome of one invariant suite: counts of checks run and the first violations found.
struct SuiteResult {
    std::string name;
    long checks = 0;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    double seconds = 0;
    bool ok() const { return violations.empty() && checks > 0; }

    // Records one check; keeps at most a few violation messages but counts all of them.
    void expect(bool cond, const std::string& what);
    long failures = 0;
};

// Bounds for the suites. "desk" is the acceptance scale, "quick" a smoke-test scale.
struct VerifyLevel {
    int operad_arity = 3, operad_dim = 2;
    int resolution_arity = 4, resolution_dim = 5;
    long resolution_cap = 20000;  // words per (arity, dim) before switching to a fixed sample
    int structure_dim = 2;
    int cobar_dim = 8;
    int twist_dim = 8, twist_homology = 6;
    int ainfty_k = 5;
    int telescope_level = 3, telescope_dim = 3;
    int cn_dim = 4, cn_bar_dim = 3;
    int duality_len = 4;

    static VerifyLevel parse(const std::string& name);  // "desk" | "quick"; InputError otherwise
};

SuiteResult verify_operad_suite(SOperad& op, int arity, int dim);
SuiteResult verify_resolution_suite(int max_arity, int max_dim, long cap);
SuiteResult verify_structure_suite(SOperad& op, int max_dim);
SuiteResult verify_steenrod_suite(const std::string& fixtures);
SuiteResult verify_cobar_suite(SOperad& op, const std::string& fixtures, int max_dim);
SuiteResult verify_twisted_suite(SOperad& op, const std::string& fixtures, int max_dim, int homology_dim);
SuiteResult verify_ainfty_suite(SOperad& op, int kmax);
SuiteResult verify_telescope_suite(SOperad& op, int max_level, int max_dim);
SuiteResult verify_cn_suite(SOperad& op, int max_dim, int bar_dim);
SuiteResult verify_duality_suite(SOperad& op, const std::string& fixtures, int max_len);

// Suite names in acceptance order, and a dispatcher over them.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, SOperad& op, const std::string& fixtures, const VerifyLevel& level);

}  // namespace einf
