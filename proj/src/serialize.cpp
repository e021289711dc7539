#include "tentlab/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tentlab {

namespace {

void put(std::ostream& out, double v) {
    static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");
    char bytes[8];
    std::memcpy(bytes, &v, 8);
    out.write(bytes, 8);
}

double get(std::istream& in) {
    char bytes[8];
    if (!in.read(bytes, 8)) throw std::runtime_error("field binary: truncated input");
    double v;
    std::memcpy(&v, bytes, 8);
    return v;
}

Rank rank_from_components(int components, int dim) {
    if (components == 1) return Rank::scalar;
    if (components == dim) return Rank::vector;
    if (components == dim * dim) return Rank::tensor;
    throw std::runtime_error("field binary: component count does not match a rank");
}

struct Header {
    int dim;
    int size;
    double box;
    int components;
};

Header read_header(std::istream& in) {
    Header h{};
    h.dim = static_cast<int>(get(in));
    h.size = static_cast<int>(get(in));
    h.box = get(in);
    h.components = static_cast<int>(get(in));
    return h;
}

void write_values(std::ostream& out, const Field& field) {
    const PhysicalField p = to_physical(field);
    for (const auto& comp : p.values)
        for (double v : comp) put(out, v);
}

Field read_values(std::istream& in, const Grid& grid, Rank rank) {
    PhysicalField p(grid, rank);
    for (auto& comp : p.values)
        for (double& v : comp) v = get(in);
    return to_spectral(p);
}

}  // namespace

void write_field(std::ostream& out, const Field& field) {
    const Grid& g = field.grid();
    put(out, g.dim());
    put(out, g.size());
    put(out, g.box());
    put(out, field.components());
    write_values(out, field);
}

Field read_field(std::istream& in) {
    const Header h = read_header(in);
    const Grid grid(h.dim, h.size, h.box);
    return read_values(in, grid, rank_from_components(h.components, h.dim));
}

void save_field(const std::filesystem::path& path, const Field& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_field(out, field);
}

Field load_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return read_field(in);
}

void write_spacetime(std::ostream& out, const SpaceTimeField& field) {
    const Grid& g = field.grid();
    put(out, g.dim());
    put(out, g.size());
    put(out, g.box());
    put(out, component_count(field.rank(), g.dim()));
    put(out, field.count());
    put(out, field.times().t_min());
    put(out, field.times().ratio());
    for (const auto& s : field.slices()) write_values(out, s);
}

SpaceTimeField read_spacetime(std::istream& in) {
    const Header h = read_header(in);
    const int count = static_cast<int>(get(in));
    const double t_min = get(in);
    const double ratio = get(in);
    const Grid grid(h.dim, h.size, h.box);
    const Rank rank = rank_from_components(h.components, h.dim);
    std::vector<Field> slices;
    for (int j = 0; j < count; ++j) slices.push_back(read_values(in, grid, rank));
    return SpaceTimeField(TimeGrid(t_min, ratio, count), std::move(slices));
}

void save_spacetime(const std::filesystem::path& path, const SpaceTimeField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_spacetime(out, field);
}

nlohmann::json field_to_json(const Field& field) {
    const PhysicalField p = to_physical(field);
    return {{"dim", field.grid().dim()},
            {"N", field.grid().size()},
            {"L", field.grid().box()},
            {"rank", rank_name(field.rank())},
            {"values", p.values}};
}

Field field_from_json(const nlohmann::json& j) {
    const Grid grid(j.at("dim").get<int>(), j.at("N").get<int>(), j.at("L").get<double>());
    const auto values = j.at("values").get<std::vector<std::vector<double>>>();
    PhysicalField p(grid, rank_from_components(static_cast<int>(values.size()), grid.dim()));
    for (std::size_t c = 0; c < values.size(); ++c) {
        if (values[c].size() != grid.points()) throw std::invalid_argument("field json: wrong value count");
        p.values[c] = values[c];
    }
    return to_spectral(p);
}

}  // namespace tentlab
