#include "chips/io.hpp"

#include <charconv>
#include <fstream>
#include <span>
#include <sstream>

#include "chips/error.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "io";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto begin = cell.find_first_not_of(" \t\r");
        const auto end = cell.find_last_not_of(" \t\r");
        cells.push_back(begin == std::string::npos ? std::string()
                                                   : cell.substr(begin, end - begin + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_int(const std::string& cell, std::int64_t& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto result = std::from_chars(first, last, out);
    return result.ec == std::errc() && result.ptr == last && !cell.empty();
}

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto result = std::from_chars(first, last, out);
    return result.ec == std::errc() && result.ptr == last && !cell.empty();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_input(kComponent, "cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank line
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

bool all_integer(const std::vector<std::string>& cells) {
    std::int64_t ignored = 0;
    for (const auto& c : cells)
        if (!parse_int(c, ignored)) return false;
    return true;
}

}  // namespace

LoadedDraws ingest_draws(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw_input(kComponent, "'" + path + "' contains no data");

    std::size_t first_data = 0;
    if (!all_integer(rows[0])) first_data = 1;  // header row
    if (first_data >= rows.size())
        throw_input(kComponent, "'" + path + "' contains a header but no data rows");

    const std::size_t n = rows[first_data].size();
    std::vector<Partition> draws;
    std::vector<std::unordered_map<std::int64_t, std::int32_t>> maps;
    draws.reserve(rows.size() - first_data);

    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != n)
            throw_input(kComponent, "row " + std::to_string(r + 1) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(n));
        std::vector<std::int64_t> raw(n);
        for (std::size_t c = 0; c < n; ++c) {
            if (!parse_int(cells[c], raw[c]))
                throw_input(kComponent, "row " + std::to_string(r + 1) + ", column " +
                                            std::to_string(c + 1) + ": '" + cells[c] +
                                            "' is not an integer label");
        }
        Partition p = Partition::canonicalize(std::span<const std::int64_t>(raw));
        std::unordered_map<std::int64_t, std::int32_t> map;
        map.reserve(n);
        for (std::size_t c = 0; c < n; ++c) map.emplace(raw[c], p.label_of(static_cast<std::int32_t>(c)));
        maps.push_back(std::move(map));
        draws.push_back(std::move(p));
    }
    return LoadedDraws{DrawSet::from_partitions(std::move(draws)), std::move(maps)};
}

ParamTable ingest_params(const std::string& path, const LoadedDraws& draws) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw_input(kComponent, "'" + path + "' contains no data");

    std::int64_t ignored = 0;
    std::size_t first_data = 0;
    if (rows[0].empty() || !parse_int(rows[0][0], ignored)) first_data = 1;
    if (first_data >= rows.size())
        throw_input(kComponent, "'" + path + "' contains a header but no data rows");

    const std::size_t columns = rows[first_data].size();
    if (columns < 3)
        throw_input(kComponent,
                    "parameter rows need an iteration, a label, and at least one value column");
    const std::size_t dim = columns - 2;
    const std::int64_t total_draws = draws.draws.draw_count();

    ParamTable table(total_draws);
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != columns)
            throw_input(kComponent, "row " + std::to_string(r + 1) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(columns));
        std::int64_t iteration = 0;
        if (!parse_int(cells[0], iteration) || iteration < 1 || iteration > total_draws)
            throw_input(kComponent, "row " + std::to_string(r + 1) +
                                        ": iteration '" + cells[0] + "' is out of range (1.." +
                                        std::to_string(total_draws) + ")");
        std::int64_t raw_label = 0;
        if (!parse_int(cells[1], raw_label))
            throw_input(kComponent, "row " + std::to_string(r + 1) + ": label '" + cells[1] +
                                        "' is not an integer");
        const auto& map = draws.raw_to_canonical[static_cast<std::size_t>(iteration - 1)];
        const auto hit = map.find(raw_label);
        if (hit == map.end())
            throw_input(kComponent, "row " + std::to_string(r + 1) + ": label " + cells[1] +
                                        " does not occur in iteration " + cells[0] +
                                        " of the draws file");
        std::vector<double> value(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            if (!parse_double(cells[j + 2], value[j]))
                throw_input(kComponent, "row " + std::to_string(r + 1) + ", column " +
                                            std::to_string(j + 3) + ": '" + cells[j + 2] +
                                            "' is not a number");
        }
        try {
            table.insert(iteration - 1, hit->second, std::move(value));
        } catch (const Error&) {
            throw_input(kComponent, "row " + std::to_string(r + 1) +
                                        ": duplicate entry for iteration " + cells[0] +
                                        ", label " + cells[1]);
        }
    }
    return table;
}

void write_draws_csv(const DrawSet& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_input(kComponent, "cannot write '" + path + "'");
    for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
        const std::int32_t* row = ds.row(m);
        for (std::int32_t i = 0; i < ds.item_count(); ++i) {
            if (i > 0) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::vector<std::vector<double>>& rows, const std::string& header,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_input(kComponent, "cannot write '" + path + "'");
    if (!header.empty()) out << header << '\n';
    char buffer[64];
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out << ',';
            std::snprintf(buffer, sizeof(buffer), "%.15g", row[j]);
            out << buffer;
        }
        out << '\n';
    }
}

}  // namespace chips
