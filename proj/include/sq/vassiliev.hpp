#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sq/diagram.hpp"
#include "sq/present.hpp"

namespace sq {

struct Probe {
    std::string name;
    StructureBundle bundle;
};

/// Enhanced polynomial of a code under each probe, in probe order.
struct Fingerprint {
    std::vector<std::string> polynomials;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
    friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const PassCode& code, const std::vector<Probe>& probes, const SolveOptions& opts = {});

/// Integer combination of fingerprints; zero coefficients are never stored.
class FormalSum {
public:
    void add(const Fingerprint& f, std::int64_t coef);
    FormalSum operator-() const;
    FormalSum operator+(const FormalSum& o) const;
    FormalSum operator-(const FormalSum& o) const;
    std::int64_t coefficient(const Fingerprint& f) const;
    const std::map<Fingerprint, std::int64_t>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    friend bool operator==(const FormalSum&, const FormalSum&) = default;

private:
    std::map<Fingerprint, std::int64_t> terms_;
};

/// Sum over classical crossings d of sign(d) * ([smoothing at d] -
/// [flat projection + unknot]). Throws InvalidCode for links.
FormalSum s_sum(const ClassicalCode& k, const std::vector<Probe>& probes, const SolveOptions& opts = {});

/// Sum over classical crossings d of sign(d) * ([glued at d] - [flat
/// projection with a glued kink]). Every probe needs a singular extension
/// (MissingExtension otherwise).
FormalSum g_sum(const ClassicalCode& k, const std::vector<Probe>& probes, const SolveOptions& opts = {});

struct Witness {
    /// "S" or "G"
    std::string invariant;
    Fingerprint term;
    std::int64_t coef1 = 0;
    std::int64_t coef2 = 0;
};

/// A difference in either sum proves k1 and k2 inequivalent; equal sums
/// prove nothing.
struct DistinguishReport {
    bool s_differs = false;
    bool g_differs = false;
    std::vector<Witness> witnesses;

    bool conclusive() const { return s_differs || g_differs; }
};

DistinguishReport distinguish(const ClassicalCode& k1, const ClassicalCode& k2, const std::vector<Probe>& probes,
                              const SolveOptions& opts = {});

} // namespace sq
