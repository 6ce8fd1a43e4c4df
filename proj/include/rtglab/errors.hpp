#pragma once

#include <stdexcept>
#include <string>

namespace rtglab {

// Base class for all domain errors raised by the library. Internal
// consistency checks (oracle mismatches that indicate a bug rather than bad
// input) throw InternalCheckFailure instead.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalCheckFailure : std::logic_error {
    explicit InternalCheckFailure(const std::string& msg) : std::logic_error(msg) {}
};

struct NotAGroup : Error {
    std::string reason;
    int x = -1, y = -1, z = -1; // witness triple where applicable
    NotAGroup(std::string r, int a = -1, int b = -1, int c = -1)
        : Error("not a group: " + r), reason(std::move(r)), x(a), y(b), z(c) {}
};

struct OrderTooLarge : Error {
    int order, bound;
    OrderTooLarge(int n, int lim)
        : Error("order " + std::to_string(n) + " exceeds bound " + std::to_string(lim)),
          order(n), bound(lim) {}
};

struct NotNormal : Error {
    int witness; // g with gNg^-1 != N
    explicit NotNormal(int g) : Error("subgroup is not normal, witness g=" + std::to_string(g)), witness(g) {}
};

struct NotASubgroup : Error {
    explicit NotASubgroup(const std::string& why) : Error("not a subgroup: " + why) {}
};

struct NotSurjective : Error {
    int missing;
    explicit NotSurjective(int y) : Error("map is not surjective, unreached point " + std::to_string(y)), missing(y) {}
};

struct NotRightInvariant : Error {
    int x, y, g; // y in U_x but y*g not in U_{x*g} (or conversely)
    NotRightInvariant(int a, int b, int c)
        : Error("topology is not right invariant at (x=" + std::to_string(a) + ", y=" + std::to_string(b) +
                ", g=" + std::to_string(c) + ")"),
          x(a), y(b), g(c) {}
};

struct NotTranslationInvariant : Error {
    int basis_index, g;
    NotTranslationInvariant(int f, int gg)
        : Error("subspace is not translation invariant (basis #" + std::to_string(f) + ", g=" + std::to_string(gg) + ")"),
          basis_index(f), g(gg) {}
};

struct FNotContinuous : Error {
    FNotContinuous() : Error("function is not continuous for the required topology") {}
};

struct MuNotInMC : Error {
    MuNotInMC() : Error("measure is not in M_C") {}
};

struct MuNotInMSigma : Error {
    MuNotInMSigma() : Error("measure is not in M_sigma") {}
};

struct ZeroTotalMass : Error {
    ZeroTotalMass() : Error("measure has zero total mass") {}
};

struct NotInvariant : Error {
    NotInvariant() : Error("measure is not right invariant") {}
};

struct NotAutomorphism : Error {
    int witness_a, witness_b;
    NotAutomorphism(int a, int b)
        : Error("permutation is not an automorphism, witness pair (" + std::to_string(a) + "," + std::to_string(b) + ")"),
          witness_a(a), witness_b(b) {}
};

struct NotClosed : Error {
    NotClosed() : Error("automorphism list is not closed under composition/inverse") {}
};

struct NotInvolution : Error {
    long long unit;
    explicit NotInvolution(long long u) : Error("u^2 != 1 mod n for u=" + std::to_string(u)), unit(u) {}
};

struct PreconditionFailed : Error {
    std::string hypothesis;
    std::string witness;
    PreconditionFailed(std::string hyp, std::string wit)
        : Error("precondition failed: " + hyp + " (witness: " + wit + ")"),
          hypothesis(std::move(hyp)), witness(std::move(wit)) {}
};

struct SystemNotCertified : Error {
    SystemNotCertified() : Error("normal system is not certified for its mode") {}
};

} // namespace rtglab
