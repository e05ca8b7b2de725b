#include "roc2/grading.hpp"

#include <sstream>

namespace roc2 {

std::string Degree::str() const
{
    std::ostringstream os;
    if (b == 0) {
        os << a;
        return os.str();
    }
    if (a != 0)
        os << a;
    if (b == 1)
        os << (a != 0 ? "+" : "") << "s";
    else if (b == -1)
        os << "-s";
    else if (b > 0)
        os << (a != 0 ? "+" : "") << b << "s";
    else
        os << b << "s";
    return os.str();
}

}  // namespace roc2
