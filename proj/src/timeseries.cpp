#include "netsir/timeseries.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "netsir/csv.hpp"

namespace netsir {

std::vector<double> TimeSeries::column(Compartment c) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

void TimeSeries::pad_to(std::size_t length) {
    if (rows.empty() || rows.size() >= length) return;
    rows.resize(length, rows.back());
}

void write_csv(std::ostream& out, const TimeSeries& series) {
    out << kTimeSeriesCsvHeader << '\n';
    for (std::size_t k = 0; k < series.rows.size(); ++k) {
        out << format_double(static_cast<double>(k) * series.dt);
        for (double v : series.rows[k].values) out << ',' << format_double(v);
        out << '\n';
    }
}

std::string to_csv(const TimeSeries& series) {
    std::ostringstream out;
    write_csv(out, series);
    return out.str();
}

TimeSeries read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTimeSeriesCsvHeader)
        throw std::invalid_argument("time series csv: unexpected header");
    TimeSeries series;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        times.push_back(parse_double(cell));
        CompartmentVector row;
        for (auto& v : row.values) {
            if (!std::getline(ls, cell, ',')) throw std::invalid_argument("time series csv: short row");
            v = parse_double(cell);
        }
        series.rows.push_back(row);
    }
    if (times.size() >= 2) series.dt = times[1] - times[0];
    return series;
}

}  // namespace netsir
