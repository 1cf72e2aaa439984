#pragma once

#include <string>
#include <vector>

namespace codim1::detail {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;
};

struct LinePlot {
    std::string title, xlabel, ylabel;
    std::vector<PlotSeries> series;
    void write(const std::string& path) const;
};

}  // namespace codim1::detail
