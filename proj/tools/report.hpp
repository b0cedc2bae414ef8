#pragma once
#include "eusys/cm/spin.hpp"
#include "eusys/gejima/gejima.hpp"
#include "eusys/hecke/degeneracy.hpp"
#include "eusys/hecke/siegel.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace eusys::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "eusys.report/1";

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Check {
    std::string id;
    bool pass = false;
    Json detail = Json::object();
};

Json check_json(const Check& c);
Json envelope(const std::string& command, unsigned long long seed, Json config, const std::vector<Check>& checks, Json result = nullptr);
bool envelope_pass(const Json& report);

// serialization
std::string cyc_str(const CycNum& x);
Json ideal_json(const iq::QuadField& K, const iq::Ideal& A);
Json group_json(const FinAbGroup& G);
Json rayclass_json(const iq::RayClassGroup& H, long long search_bound = 20000);
Json hecke_char_json(const iq::HeckeChar& psi);

// "3", "(2+2i)", "(2+2i)*3", "(1+w)^2", "[5,4;0,1]"; i needs disc -4, w = (-1+sqrt-3)/2 needs disc -3, t = theta
iq::Ideal parse_modulus(const iq::QuadField& K, const std::string& s);
CartanLabel parse_label(const std::string& s);
MatQ parse_matrix(const Json& j, long ell);

// local checks
Check spin_verbatim(const std::vector<long>& primes);
Check satake_homomorphism(const std::vector<long>& primes);
Check nov_factorization(const std::vector<long>& primes);
Check multiplier_grading(const std::vector<long>& primes);
Check degeneracy(const std::vector<long>& primes);
Check siegel_sections(const std::vector<long>& primes);
Check integrality(const std::vector<long>& primes);
Check gejima_partition(long ell, int bound, size_t samples, unsigned long long seed);

// global checks
struct FieldModulus {
    long long disc = -4;
    std::string psi_modulus;   // modulus of psi
    std::string n;             // ray class modulus, a multiple of psi_modulus
};

struct QlConfig {
    FieldModulus fm;
    long long p = 2, ell = 5;
    int k1 = 4, k2 = 3;
};

cm::HeckeChar make_psi(long long disc, const std::string& modulus, size_t choice = 0);
cm::SatakeData default_satake(int k1, int k2, long ell);

Check cm_eigenform(long long disc, const std::string& modulus, long long bound);
Check phi_property(const std::vector<FieldModulus>& configs, long long bound);
Check norm_relation(const std::vector<std::pair<FieldModulus, std::vector<long long>>>& configs);
Check ql_twist(const std::vector<QlConfig>& configs);
Check weight_exponents_check(const std::vector<std::pair<int, int>>& pairs);

struct SuiteConfig {
    bool quick = false;
    unsigned long long seed = 1;
};

struct SuitePlan {
    std::vector<long> local_primes, siegel_primes;
    long gejima_prime = 2;
    int gejima_bound = 1;
    size_t gejima_samples = 200;
    long long eigen_bound = 500;
    std::vector<FieldModulus> phi_configs;
    long long phi_bound = 100;
    std::vector<std::pair<FieldModulus, std::vector<long long>>> norm_configs;
    std::vector<QlConfig> ql_configs;
    std::vector<std::pair<int, int>> weight_pairs;
};

SuitePlan suite_plan(const SuiteConfig& c);
Json plan_json(const SuitePlan& p);
Json run_suite(const SuiteConfig& c);

} // namespace eusys::report
