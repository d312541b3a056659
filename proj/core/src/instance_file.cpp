#include "centagg/instance_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace centagg {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string instance_to_string(const Layout& layout, const GroundTruth* truth) {
    std::ostringstream out;
    out << layout.n << " " << layout.t << " " << layout.d << " " << layout.m() << "\n";
    for (const auto& rv : layout.received) {
        out << rv.client_id;
        for (double x : rv.value) out << " " << fmt(x);
        out << "\n";
    }
    out << "faulty";
    if (truth) {
        for (int id : truth->faulty_ids) out << " " << id;
    }
    out << "\n";
    return out.str();
}

void write_instance(const std::string& path, const Layout& layout, const GroundTruth* truth) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("instance: cannot write " + path);
    out << instance_to_string(layout, truth);
}

GeneratedInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("instance: cannot open " + path);

    GeneratedInstance inst;
    int m = 0;
    if (!(in >> inst.layout.n >> inst.layout.t >> inst.layout.d >> m)) {
        throw std::runtime_error("instance: malformed header in " + path);
    }
    for (int i = 0; i < m; ++i) {
        ReceivedVector rv;
        if (!(in >> rv.client_id)) throw std::runtime_error("instance: truncated vectors in " + path);
        rv.value.resize(static_cast<std::size_t>(inst.layout.d));
        for (auto& x : rv.value) {
            if (!(in >> x)) throw std::runtime_error("instance: truncated vector row in " + path);
        }
        inst.layout.received.push_back(std::move(rv));
    }
    std::string tag;
    if (!(in >> tag) || tag != "faulty") {
        throw std::runtime_error("instance: missing faulty section in " + path);
    }
    int id = 0;
    while (in >> id) inst.truth.faulty_ids.insert(id);

    for (const auto& rv : inst.layout.received) {
        if (!inst.truth.faulty_ids.count(rv.client_id)) {
            inst.truth.honest_vectors.push_back(rv);
        }
    }
    return inst;
}

}  // namespace centagg
