#include "vswt/io.hpp"

#include "vswt/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace vswt::io {

std::string format_value(double v) {
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

void write_metadata(std::ostream& out, const Metadata& meta) {
    out << "# generator: " << kGenerator << '\n';
    for (const auto& [k, v] : meta) {
        out << "# " << k << ": " << v << '\n';
    }
}

void check(const std::ostream& out) {
    if (!out) {
        throw IoError("failed writing CSV output");
    }
}

}  // namespace

void write_csv(const curves::CurveTable& table, std::ostream& out, const Metadata& extra) {
    Metadata meta = table.metadata;
    meta.insert(meta.end(), extra.begin(), extra.end());
    write_metadata(out, meta);
    out << table.abscissa_label;
    for (const auto& s : table.series) {
        out << ',' << s.label;
    }
    out << '\n';
    // A table without series is header-only.
    const std::size_t rows = table.series.empty() ? 0 : table.abscissa.size();
    for (std::size_t r = 0; r < rows; ++r) {
        out << format_value(table.abscissa[r]);
        for (const auto& s : table.series) {
            out << ',' << format_value(s.values[r]);
        }
        out << '\n';
    }
    check(out);
}

void write_csv(const engine::Trajectory& traj, std::ostream& out, const Metadata& extra) {
    Metadata meta = {
        {"model", std::string(to_string(traj.model))},
        {"sample_interval", format_value(traj.sample_interval)},
        {"power_floor_start", traj.power_floor_start ? "true" : "false"},
    };
    meta.insert(meta.end(), extra.begin(), extra.end());
    write_metadata(out, meta);
    const auto cols = traj.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out << (c ? "," : "") << cols[c].first;
    }
    out << '\n';
    for (std::size_t r = 0; r < traj.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out << (c ? "," : "") << format_value((*cols[c].second)[r]);
        }
        out << '\n';
    }
    check(out);
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f) {
        throw IoError("failed writing '" + path + "'");
    }
}

ParsedCsv parse_csv(std::string_view text) {
    ParsedCsv out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            out.comments.emplace_back(line);
            continue;
        }
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (out.header.empty()) {
            for (const auto c : cells) {
                out.header.emplace_back(c);
            }
            continue;
        }
        if (cells.size() != out.header.size()) {
            throw IoError("row with " + std::to_string(cells.size()) + " cells, header has " + std::to_string(out.header.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto c : cells) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc{} || ptr != c.data() + c.size()) {
                throw IoError("bad number '" + std::string(c) + "'");
            }
            row.push_back(v);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

PlotKind parse_plot_kind(std::string_view s) {
    if (s == "cp-vw") {
        return PlotKind::cp_vw;
    }
    if (s == "cp-lambda") {
        return PlotKind::cp_lambda;
    }
    if (s == "pmech-omega") {
        return PlotKind::pmech_omega;
    }
    if (s == "trajectory") {
        return PlotKind::trajectory;
    }
    throw DomainError("unknown plot kind '" + std::string(s) + "'");
}

namespace {

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

void family_plot(std::ostringstream& gp, const std::string& csv, const std::vector<std::string>& columns) {
    gp << "plot ";
    for (std::size_t c = 1; c < columns.size(); ++c) {
        gp << (c > 1 ? ", \\\n     " : "") << quoted(csv) << " using " << quoted(columns[0]) << ':' << quoted(columns[c])
           << " with lines title " << quoted(columns[c]);
    }
    gp << '\n';
}

}  // namespace

std::string emit_plot_script(const std::string& csv_path, PlotKind kind, const std::vector<std::string>& columns) {
    if (columns.size() < 2) {
        throw DomainError("plot script needs an abscissa and at least one series column");
    }
    std::ostringstream gp;
    gp << "# generated by " << kGenerator << "\n"
       << "set encoding utf8\n"
       << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set termoption noenhanced\n"
       << "set terminal pngcairo size 1200,800\n"
       << "set output " << quoted(csv_path + ".png") << "\n"
       << "set grid\n"
       << "set key outside right\n";
    switch (kind) {
        case PlotKind::cp_vw:
            gp << "set xlabel \"v_w (m/s)\"\nset ylabel \"Cp\"\n";
            family_plot(gp, csv_path, columns);
            break;
        case PlotKind::cp_lambda:
            gp << "set xlabel \"λ\"\nset ylabel \"Cp\"\n";
            family_plot(gp, csv_path, columns);
            break;
        case PlotKind::pmech_omega:
            gp << "set xlabel \"Ω_WT (pu)\"\nset ylabel \"P_mech (pu)\"\n";
            family_plot(gp, csv_path, columns);
            break;
        case PlotKind::trajectory: {
            struct Panel {
                const char* ylabel;
                std::vector<std::string> cols;
            };
            const auto has = [&](const std::string& c) {
                for (const auto& x : columns) {
                    if (x == c) {
                        return true;
                    }
                }
                return false;
            };
            std::vector<Panel> panels = {
                {"v_w (m/s)", {"v_w"}},
                {"β (deg)", {"beta"}},
                {"λ", {"lambda"}},
                {"Cp", {"cp"}},
                {"Ω (pu)", {"omega_wt", "omega_g", "omega_ref"}},
                {"P (pu)", {"p_mech", "p_e", "p_ef"}},
            };
            gp << "set multiplot layout 3,2\nset xlabel \"t (s)\"\n";
            for (const auto& panel : panels) {
                std::vector<std::string> present;
                for (const auto& c : panel.cols) {
                    if (has(c)) {
                        present.push_back(c);
                    }
                }
                if (present.empty()) {
                    continue;
                }
                gp << "set ylabel " << quoted(panel.ylabel) << '\n';
                std::vector<std::string> cols = {columns[0]};
                cols.insert(cols.end(), present.begin(), present.end());
                family_plot(gp, csv_path, cols);
            }
            gp << "unset multiplot\n";
            break;
        }
    }
    return gp.str();
}

}  // namespace vswt::io
