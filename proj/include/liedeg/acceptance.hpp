#pragma once
/**
 * @file acceptance.hpp
 * @brief The acceptance suite shared by the acceptance binary and `liedeg --self-test`.
 */

#include <ostream>

namespace liedeg {

/// Prints one PASS/FAIL line per criterion. Quick mode shrinks sample counts
/// and the determinism reruns but keeps every tolerance. Returns true when all pass.
bool run_acceptance_suite(std::ostream& out, bool quick = false);

}  // namespace liedeg
