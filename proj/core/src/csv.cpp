#include "unfold/csv.hpp"

#include <cstdio>
#include <fstream>

#include "unfold/errors.hpp"

namespace unfold {

void save_csv(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    char buf[64];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", p[c]);
            if (c > 0) {
                out << ',';
            }
            out << buf;
        }
        out << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("write failure on " + path);
    }
}

} // namespace unfold
