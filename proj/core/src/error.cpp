#include "pvcsd/error.hpp"

#include <cmath>

namespace pvcsd {

void require_finite(double value, const char* what)
{
    if (!std::isfinite(value))
        throw InputError(std::string(what) + " must be finite");
}

} // namespace pvcsd
