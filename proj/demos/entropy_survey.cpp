// Surveys a few integer matrices: exact zero-entropy decision, entropy
// value, and (when defined) the unipotency order.

#include <affdyn/exact_algebra.hpp>

#include <cstdio>
#include <string>
#include <vector>

using namespace affdyn;

int main() {
    struct Case {
        std::string name;
        IntMatrix m;
    };
    std::vector<Case> cases = {
        {"cat map [[2,1],[1,1]]", IntMatrix{{Int(2), Int(1)}, {Int(1), Int(1)}}},
        {"shear [[1,1],[0,1]]", IntMatrix{{Int(1), Int(1)}, {Int(0), Int(1)}}},
        {"rotation [[0,-1],[1,0]]", IntMatrix{{Int(0), Int(-1)}, {Int(1), Int(0)}}},
        {"order-6 [[0,-1],[1,1]]", IntMatrix{{Int(0), Int(-1)}, {Int(1), Int(1)}}},
        {"diag(2,3)", IntMatrix{{Int(2), Int(0)}, {Int(0), Int(3)}}},
    };
    for (const auto& c : cases) {
        bool zero = is_zero_entropy(c.m);
        double h = entropy(c.m);
        std::printf("%-26s  zero-entropy: %-3s  h = %.10f", c.name.c_str(), zero ? "yes" : "no", h);
        if (zero && (det(c.m) == 1 || det(c.m) == -1))
            std::printf("  b = %llu", static_cast<unsigned long long>(unipotency_order(c.m)));
        std::printf("\n");
    }
    return 0;
}
