#include "grfpp/meshtask.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "grfpp/rng.hpp"

namespace grfpp {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

int parse_vertex_ref(const std::string& token, int num_positions) {
    // "i", "i/t", "i//n", "i/t/n"; 1-based, negatives count from the end.
    const auto slash = token.find('/');
    int idx = std::stoi(slash == std::string::npos ? token : token.substr(0, slash));
    if (idx < 0) idx = num_positions + idx + 1;
    if (idx < 1 || idx > num_positions) throw FormatError("obj: vertex index out of range");
    return idx - 1;
}

}  // namespace

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open mesh: " + path);

    Mesh mesh;
    std::vector<Vec3> file_normals;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p[0] >> p[1] >> p[2]))
                throw FormatError(path + ":" + std::to_string(line_no) + ": malformed v record");
            mesh.positions.push_back(p);
        } else if (tag == "vn") {
            Vec3 n;
            if (!(ls >> n[0] >> n[1] >> n[2]))
                throw FormatError(path + ":" + std::to_string(line_no) + ": malformed vn record");
            file_normals.push_back(n);
        } else if (tag == "f") {
            std::vector<int> verts;
            std::string tok;
            while (ls >> tok) verts.push_back(parse_vertex_ref(tok, mesh.num_vertices()));
            if (verts.size() != 3)
                throw FormatError(path + ":" + std::to_string(line_no) +
                                  ": non-triangular face with " + std::to_string(verts.size()) +
                                  " vertices");
            mesh.faces.push_back({verts[0], verts[1], verts[2]});
        }
    }
    if (mesh.positions.empty() || mesh.faces.empty())
        throw FormatError(path + ": empty mesh");

    if (file_normals.size() == mesh.positions.size()) {
        mesh.normals = std::move(file_normals);
    } else {
        // Area-weighted face-normal averaging (cross product length = 2*area).
        mesh.normals.assign(mesh.positions.size(), {0.0, 0.0, 0.0});
        for (const auto& f : mesh.faces) {
            const Vec3 fn = cross(sub(mesh.positions[f[1]], mesh.positions[f[0]]),
                                  sub(mesh.positions[f[2]], mesh.positions[f[0]]));
            for (int v : f)
                for (int c = 0; c < 3; ++c) mesh.normals[v][c] += fn[c];
        }
    }
    for (auto& n : mesh.normals) {
        const double len = norm(n);
        if (len > 0.0)
            for (double& c : n) c /= len;
    }
    return mesh;
}

Graph Mesh::to_graph(EdgeWeightMode mode, NormalizationMode normalization) const {
    std::set<std::pair<int, int>> seen;
    EdgeList edges;
    for (const auto& f : faces) {
        for (auto [a, b] : {std::pair{f[0], f[1]}, std::pair{f[1], f[2]}, std::pair{f[2], f[0]}}) {
            if (a == b) continue;
            const auto key = std::minmax(a, b);
            if (!seen.insert(key).second) continue;
            double w = 1.0;
            if (mode == EdgeWeightMode::inv_length) {
                const double len = norm(sub(positions[a], positions[b]));
                w = len > 0.0 ? 1.0 / len : 1.0;
            }
            edges.emplace_back(key.first, key.second, w);
        }
    }
    return build_graph(num_vertices(), edges, normalization);
}

KernelApplier applier_from_dense(const DenseMatrix& k) {
    return [k](std::span<const double> v) { return matvec(k, v); };
}

KernelApplier applier_from_estimator(const StitchedEstimator& est) {
    return [&est](std::span<const double> v) { return apply(est, v); };
}

NormalPredictionResult predict_normals(const Mesh& mesh, double mask_fraction,
                                       const KernelApplier& kernel, std::uint64_t seed) {
    if (!(mask_fraction > 0.0 && mask_fraction < 1.0))
        throw DomainError("predict_normals: mask_fraction must be in (0, 1)");
    const int n = mesh.num_vertices();
    const int n_masked = static_cast<int>(mask_fraction * n);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    SplitMix64 rng(mix_seed(seed, 0x6d65ULL));
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);

    std::vector<char> masked(n, 0);
    for (int i = 0; i < n_masked; ++i) masked[order[i]] = 1;

    // Restriction to unmasked columns = zeroing masked inputs, one kernel
    // application per coordinate.
    std::array<std::vector<double>, 3> predicted;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> v(n, 0.0);
        for (int j = 0; j < n; ++j)
            if (!masked[j]) v[j] = mesh.normals[j][c];
        predicted[c] = kernel(v);
    }

    NormalPredictionResult res;
    res.masked_count = n_masked;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!masked[i]) continue;
        Vec3 p{predicted[0][i], predicted[1][i], predicted[2][i]};
        const double len = norm(p);
        if (len <= 0.0 || !std::isfinite(len)) {
            ++res.zero_prediction_count;
            continue;  // scored 0
        }
        for (double& c : p) c /= len;
        total += dot(p, mesh.normals[i]);
    }
    res.mean_cosine = n_masked > 0 ? total / n_masked : 0.0;
    return res;
}

}  // namespace grfpp
