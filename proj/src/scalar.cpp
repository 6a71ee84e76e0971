#include "renorm/scalar.hpp"

#include <sstream>

namespace renorm {

std::string Scalar::str() const {
    std::ostringstream os;
    if (is_exact()) {
        const auto& g = exact_value();
        if (g.im == 0) {
            os << g.re.str();
        } else if (g.re == 0) {
            os << g.im.str() << "*i";
        } else {
            os << g.re.str() << (g.im > 0 ? "+" : "") << g.im.str() << "*i";
        }
    } else {
        auto z = to_complex();
        os << z.real();
        if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "*i";
    }
    return os.str();
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace renorm
