#ifndef JACOBI_MV_ERRORS_HPP
#define JACOBI_MV_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace jacobi_mv
{

enum class errc {
    invalid_dimension,
    invalid_index,
    out_of_lattice,
    dimension_mismatch,
    insufficient_moments,
    unsupported_parameter,
    parameter_out_of_range,
    singular_parameter,
    no_mass_factor,
    not_a_state,
    internal_consistency,
    representation_error,
    insufficient_depth,
    invalid_input,
};

inline std::string_view to_string(errc code) noexcept
{
    switch (code) {
        case errc::invalid_dimension: return "invalid-dimension";
        case errc::invalid_index: return "invalid-index";
        case errc::out_of_lattice: return "out-of-lattice";
        case errc::dimension_mismatch: return "dimension-mismatch";
        case errc::insufficient_moments: return "insufficient-moments";
        case errc::unsupported_parameter: return "unsupported-parameter";
        case errc::parameter_out_of_range: return "parameter-out-of-range";
        case errc::singular_parameter: return "singular-parameter";
        case errc::no_mass_factor: return "no-mass-factor";
        case errc::not_a_state: return "not-a-state";
        case errc::internal_consistency: return "internal-consistency";
        case errc::representation_error: return "representation-error";
        case errc::insufficient_depth: return "insufficient-depth";
        case errc::invalid_input: return "invalid-input";
    }
    return "unknown";
}

/// Single exception type for the library; the category lives in code().
class error : public std::runtime_error
{
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), m_code(code)
    {
    }

    errc code() const noexcept { return m_code; }

private:
    errc m_code;
};

} // namespace jacobi_mv

#endif
