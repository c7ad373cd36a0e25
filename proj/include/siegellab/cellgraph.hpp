#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "siegellab/blaschke.hpp"
#include "siegellab/contfrac.hpp"

namespace siegellab::cellgraph {

using complexd = std::complex<double>;

/// One lifted partition point: angle theta_j plus an integer translate.
struct LiftedPoint {
    std::int64_t j = 0;
    int shift = 0;
    double x = 0.0;  // theta_j + shift
};

/// The level-n dynamical partition lifted to the window [-1, 2): points x_j
/// for 0 <= j < q_n in all three fundamental domains, sorted by position.
struct DynPartition {
    int level = 0;
    std::int64_t q = 1;
    std::vector<LiftedPoint> points;  // sorted by x
    std::vector<double> M;            // M_n at each point (0 at window ends)
    std::vector<bool> has_M;
};

/// Partition family for levels 0..n_max plus the graph data derived from it.
class GraphGamma {
public:
    /// Rotation model: x_j = e^{-2 pi i j alpha} in closed form.
    static GraphGamma rotation(const contfrac::CFExpansion& alpha, int n_max);
    /// Candidate-model circle map: x_j by iterated inverse steps.
    static GraphGamma blaschke_model(const blaschke::BlaschkeModel& model,
                                     const contfrac::CFExpansion& alpha, int n_max);

    int n_max() const { return n_max_; }
    const std::vector<DynPartition>& levels() const { return levels_; }
    const std::vector<std::int64_t>& q() const { return q_; }
    const contfrac::CFExpansion& alpha() const { return alpha_; }

    /// M_n at the lifted point of x_j + shift; throws if absent.
    double M_at(int level, std::int64_t j, int shift) const;

    /// Piecewise-linear height of the level-n vertex chain at position x.
    double envelope(int level, double x) const;

    struct Edge {
        complexd a, b;
        int level = 0;
        bool vertical = false;
    };
    /// All edges with both ends in the window core.
    std::vector<Edge> edges() const;

private:
    GraphGamma() = default;
    void build_from_angles(const std::vector<double>& theta, int n_max);

    int n_max_ = 0;
    contfrac::CFExpansion alpha_;
    std::vector<std::int64_t> q_;  // q_0..q_{n_max}
    std::vector<DynPartition> levels_;
};

struct Cell {
    enum class Shape { kTriangle, kTrapezoid, kPolygon };
    int level = 0;
    LiftedPoint a, b;                 // defining adjacent pair, a.x < b.x
    std::vector<LiftedPoint> chain;   // [a..b] in the level-(n+1) partition
    int k = 0;                        // bottom segment count
    Shape shape = Shape::kPolygon;
    std::vector<complexd> polygon;    // boundary, top edge first
    double top_height = 0.0;
    double area = 0.0;
};

/// The n-cells with representative x in [0, 1).
std::vector<Cell> enumerate_cells(const GraphGamma& graph, int n);

struct StripHeights {
    std::vector<double> h;  // h_n = max Im over all m-cells with m >= n
    double sigma = 0.0;     // exp of the fitted slope of log h_n vs n
    double slope = 0.0;
    double stderr_slope = 0.0;
};

StripHeights strip_heights(const GraphGamma& graph);

/// Max dilatation of the piecewise-affine fan extension between two cells
/// with identical combinatorics (label: PL-fan dilatation).
double boundary_extension_dilatation(const Cell& gamma, const Cell& gamma_prime);

/// Pairs the n-cells of two graphs by their index data.
std::vector<std::pair<Cell, Cell>> corresponding_cells(const GraphGamma& g,
                                                       const GraphGamma& g_prime, int n);

struct ExpRegionAreas {
    std::vector<double> area;  // rasterized area of exp(all m-cells, m >= n)
    double decay_rate = 0.0;   // exp of the fitted slope of log area vs n
};

/// Areas of the exp-images (z -> e^{2 pi i z}) of the cell regions below
/// level n, rasterized on a grid_n^2 grid over the unit-disk neighborhood.
ExpRegionAreas exp_cell_region_areas(const GraphGamma& graph, int grid_n = 1024);

}  // namespace siegellab::cellgraph
