#include "gmmp/rational.hpp"

#include <ostream>

namespace gmmp {

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace gmmp
