#pragma once

#include <json.hpp>

#include <string>

namespace slising {

struct VerifyReport {
    bool pass = true;
    nlohmann::ordered_json detail;
};

/// Named property suites over the bundled fixture set:
///   identities   - determinant vs brute force, partition triangle, trace
///                  identity, Fourier product, correlation equivalences,
///                  self-dual point
///   cancellation - pairing parity, signed decompositions, Whitney signs,
///                  configuration cancellation
///   bijection    - labelled-loop involution audit and counting formula
///   norms        - torus operator norm, rectangle norm bound, block
///                  eigenvalues
///   all          - everything above
VerifyReport verify_suite(const std::string& name);

} // namespace slising
