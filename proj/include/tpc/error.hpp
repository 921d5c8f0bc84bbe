#pragma once

#include <stdexcept>
#include <string>

namespace tpc {

// Error kinds carried by tpc::error. CLI maps these to exit codes:
// mathematically negative conclusions exit 2, input/usage problems exit 1.
enum class errc {
    invalid_spec,
    size_guard_exceeded,
    not_a_subgroup,
    not_normal,
    not_abelian,
    identity_in_connection_set,
    not_inverse_closed,
    connection_set_not_conjugation_closed,
    code_not_conjugation_closed,
    not_a_code,
    not_a_partition,
    empty_edge_set,
    not_equitable,
    element_not_in_connection_set,
    element_in_subgroup,
    degree_not_power_of_two,
    not_spanning,
    construction_exhausted,
    dimension_mismatch,
    internal_invariant_violated,
};

inline const char* errc_name(errc k) {
    switch (k) {
    case errc::invalid_spec: return "invalid-spec";
    case errc::size_guard_exceeded: return "size-guard-exceeded";
    case errc::not_a_subgroup: return "not-a-subgroup";
    case errc::not_normal: return "not-normal";
    case errc::not_abelian: return "not-abelian";
    case errc::identity_in_connection_set: return "identity-in-connection-set";
    case errc::not_inverse_closed: return "not-inverse-closed";
    case errc::connection_set_not_conjugation_closed: return "connection-set-not-conjugation-closed";
    case errc::code_not_conjugation_closed: return "code-not-conjugation-closed";
    case errc::not_a_code: return "not-a-code";
    case errc::not_a_partition: return "not-a-partition";
    case errc::empty_edge_set: return "empty-edge-set";
    case errc::not_equitable: return "not-equitable";
    case errc::element_not_in_connection_set: return "element-not-in-connection-set";
    case errc::element_in_subgroup: return "element-in-subgroup";
    case errc::degree_not_power_of_two: return "degree-not-power-of-two";
    case errc::not_spanning: return "not-spanning";
    case errc::construction_exhausted: return "construction-exhausted";
    case errc::dimension_mismatch: return "dimension-mismatch";
    case errc::internal_invariant_violated: return "internal-invariant-violated";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) {
    throw error(kind, std::string(errc_name(kind)) + ": " + msg);
}

} // namespace tpc
