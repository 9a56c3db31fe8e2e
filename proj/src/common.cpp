#include "specadapt/common.hpp"

#include <iostream>

namespace specadapt {

void warn(const std::string& message) {
    std::cerr << "warning: " << message << "\n";
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "cosine_similarity: size mismatch");
    const double na = l2_norm(a);
    const double nb = l2_norm(b);
    if (na < 1e-12 || nb < 1e-12) return 0.0;
    return dot(a, b) / (na * nb);
}

}  // namespace specadapt
