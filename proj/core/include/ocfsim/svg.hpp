#ifndef OCFSIM_SVG_HPP
#define OCFSIM_SVG_HPP

#include <string>
#include <vector>

#include "ocfsim/coalition.hpp"
#include "ocfsim/topology.hpp"

namespace ocfsim {

/// One polyline of a chart.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool step = false; // draw as a staircase (empirical CDFs)
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    /// Embedded as an XML comment: config hash, seed list, generator version.
    std::string provenance;
};

/// Writes a self-contained SVG line chart (axes, ticks, legend). No
/// plotting-library dependency; the files are plain vector graphics.
std::string render_plot(const PlotSpec& spec);
void write_plot(const std::string& path, const PlotSpec& spec);

/// Scene view of a run: MBS, SBSs with ids, SUEs, MUEs, and one convex hull
/// per multi-member coalition over its member SBS positions.
std::string render_snapshot(const Topology& topo, const CoalitionStructure& structure,
                            const std::string& provenance);
void write_snapshot(const std::string& path, const Topology& topo,
                    const CoalitionStructure& structure, const std::string& provenance);

} // namespace ocfsim

#endif // OCFSIM_SVG_HPP
