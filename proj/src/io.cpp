#include "qisflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qisflow/random.hpp"

namespace qisflow {

using json = nlohmann::ordered_json;

namespace {

int line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    int line = 1;
    for (std::size_t i = 0; i < byte; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

// Field errors report the line of the first occurrence of the key.
[[noreturn]] void field_error(std::string_view text, const std::string& field, const std::string& key,
                              const std::string& message) {
    const std::size_t pos = text.find("\"" + key + "\"");
    const int line = pos == std::string_view::npos ? 0 : line_of(text, pos);
    std::ostringstream os;
    os << "field '" << field << "'";
    if (line > 0) os << " (line " << line << ")";
    os << ": " << message;
    throw ParseError(os.str(), line, field);
}

struct Reader {
    std::string_view text;

    double number(const json& j, const std::string& field, const std::string& key) const {
        if (!j.is_number()) field_error(text, field, key, "expected a number");
        return j.get<double>();
    }

    RVector vector(const json& j, const std::string& field, const std::string& key) const {
        if (!j.is_array()) field_error(text, field, key, "expected an array of numbers");
        RVector v(static_cast<Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i)
            v(static_cast<Index>(i)) = number(j[i], field + "[" + std::to_string(i) + "]", key);
        return v;
    }

    Eigen::MatrixXd matrix(const json& j, Index m, const std::string& field, const std::string& key) const {
        if (!j.is_array() || static_cast<Index>(j.size()) != m)
            field_error(text, field, key, "expected " + std::to_string(m) + " rows");
        Eigen::MatrixXd out(m, m);
        for (Index r = 0; r < m; ++r) {
            const std::string row_field = field + "[" + std::to_string(r) + "]";
            const RVector row = vector(j[static_cast<std::size_t>(r)], row_field, key);
            if (row.size() != m) field_error(text, row_field, key, "expected " + std::to_string(m) + " entries");
            out.row(r) = row.transpose();
        }
        return out;
    }
};

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json matrix_json(const Eigen::MatrixXd& a) {
    json rows = json::array();
    for (Index r = 0; r < a.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const RVector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Problem files

CostSpec ProblemFile::cost() const {
    try {
        return CostSpec(c);
    } catch (const ContractError& e) {
        throw ValidationError(e.what());
    }
}

DensityState ProblemFile::initial_state(std::optional<std::uint64_t> fallback_seed) const {
    try {
        switch (init.kind) {
            case InitSpec::Kind::barycenter: return DensityState::maximally_mixed(m);
            case InitSpec::Kind::diagonal: return embed_mu(SimplexPoint(init.diagonal));
            case InitSpec::Kind::matrix: return DensityState(init.matrix);
            case InitSpec::Kind::random: {
                const auto s = seed ? seed : fallback_seed;
                if (!s) throw ValidationError("init 'random' needs a seed (problem file, --seed or QISFLOW_SEED)");
                Sampler rng(*s);
                return rng.density(m);
            }
        }
    } catch (const ContractError& e) {
        throw ValidationError(std::string("init: ") + e.what());
    } catch (const RegularityError& e) {
        throw ValidationError(std::string("init: ") + e.what());
    }
    throw ValidationError("init: unknown kind");
}

ProblemFile parse_problem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        std::ostringstream os;
        os << "malformed problem file (line " << line << "): " << e.what();
        throw ParseError(os.str(), line, "");
    }
    if (!doc.is_object()) throw ParseError("problem file must be a JSON object", 1, "");
    const Reader rd{text};

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "m" && key != "c" && key != "init" && key != "params" && key != "seed")
            field_error(text, key, key, "unknown field");
    }

    ProblemFile p;
    if (!doc.contains("m")) throw ParseError("field 'm': missing", 0, "m");
    if (!doc["m"].is_number_integer() || doc["m"].get<long long>() <= 0)
        field_error(text, "m", "m", "expected a positive integer");
    p.m = static_cast<Index>(doc["m"].get<long long>());

    if (!doc.contains("c")) throw ParseError("field 'c': missing", 0, "c");
    p.c = rd.vector(doc["c"], "c", "c");
    if (p.c.size() != p.m) field_error(text, "c", "c", "expected " + std::to_string(p.m) + " entries");
    for (Index j = 0; j < p.m; ++j)
        if (p.c(j) == 0.0) field_error(text, "c[" + std::to_string(j) + "]", "c", "costs must be nonzero");

    if (doc.contains("init")) {
        const json& init = doc["init"];
        if (init.is_string()) {
            const std::string kind = init.get<std::string>();
            if (kind == "barycenter") p.init.kind = InitSpec::Kind::barycenter;
            else if (kind == "random") p.init.kind = InitSpec::Kind::random;
            else field_error(text, "init", "init", "unknown init '" + kind + "'");
        } else if (init.is_object() && init.size() == 1 && init.contains("diagonal")) {
            p.init.kind = InitSpec::Kind::diagonal;
            p.init.diagonal = rd.vector(init["diagonal"], "init.diagonal", "diagonal");
            if (p.init.diagonal.size() != p.m)
                field_error(text, "init.diagonal", "diagonal", "expected " + std::to_string(p.m) + " entries");
        } else if (init.is_object() && init.size() == 1 && init.contains("matrix")) {
            const json& mat = init["matrix"];
            if (!mat.is_object() || !mat.contains("real"))
                field_error(text, "init.matrix", "matrix", "expected an object with 'real' and optional 'imag'");
            for (const auto& [key, value] : mat.items()) {
                (void)value;
                if (key != "real" && key != "imag") field_error(text, "init.matrix." + key, key, "unknown field");
            }
            p.init.kind = InitSpec::Kind::matrix;
            const Eigen::MatrixXd re = rd.matrix(mat["real"], p.m, "init.matrix.real", "real");
            const Eigen::MatrixXd im = mat.contains("imag") ? rd.matrix(mat["imag"], p.m, "init.matrix.imag", "imag")
                                                            : Eigen::MatrixXd::Zero(p.m, p.m);
            p.init.matrix = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
        } else {
            field_error(text, "init", "init",
                        "expected \"barycenter\", \"random\", {\"diagonal\": [...]} or {\"matrix\": {...}}");
        }
    }

    if (doc.contains("params")) {
        const json& params = doc["params"];
        if (!params.is_object()) field_error(text, "params", "params", "expected an object");
        for (const auto& [key, value] : params.items()) {
            const std::string field = "params." + key;
            if (key == "step") p.params.step = rd.number(value, field, key);
            else if (key == "t_max") p.params.t_max = rd.number(value, field, key);
            else if (key == "grad_tol") p.params.grad_tol = rd.number(value, field, key);
            else if (key == "boundary_floor") p.params.boundary_floor = rd.number(value, field, key);
            else if (key == "record_every") {
                if (!value.is_number_integer()) field_error(text, field, key, "expected an integer");
                p.params.record_every = value.get<int>();
            } else field_error(text, field, key, "unknown parameter");
        }
        try {
            p.params.validate();
        } catch (const ContractError& e) {
            throw ValidationError(e.what());
        }
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) field_error(text, "seed", "seed", "expected a non-negative integer");
        p.seed = doc["seed"].get<std::uint64_t>();
    }
    return p;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'", 0, "");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

// ---------------------------------------------------------------------------
// Trajectory output

std::string lp_summary_json(const LpSolution& sol) {
    json s;
    s["vertex"] = sol.vertex + 1;
    s["objective"] = sol.objective;
    s["stop_reason"] = std::string(to_string(sol.stop_reason));
    s["final_point"] = vector_json(sol.final_point);
    s["cost_shift"] = {{"offset", sol.shift.offset}, {"scale", sol.shift.scale}};
    return s.dump();
}

void write_matrix_trajectory(std::ostream& os, const FlowTrajectory& traj, OutputFormat format,
                             const std::string& summary_json) {
    const Index m = traj.states.front().dim();
    const CMatrix& start = traj.states.front().matrix();
    if (format == OutputFormat::csv) {
        os << "t";
        for (const char* part : {"re", "im"})
            for (Index j = 1; j <= m; ++j)
                for (Index k = 1; k <= m; ++k) os << ',' << part << '_' << j << '_' << k;
        for (Index j = 1; j <= m; ++j) os << ",eig_" << j;
        os << ",potential,commutator\n";
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const CMatrix& r = traj.states[i].matrix();
            os << fmt_double(traj.times[i]);
            for (Index j = 0; j < m; ++j)
                for (Index k = 0; k < m; ++k) os << ',' << fmt_double(r(j, k).real());
            for (Index j = 0; j < m; ++j)
                for (Index k = 0; k < m; ++k) os << ',' << fmt_double(r(j, k).imag());
            const RVector eig = spectral_decompose(traj.states[i], 0.0).theta;
            for (Index j = 0; j < m; ++j) os << ',' << fmt_double(eig(j));
            os << ',' << fmt_double(traj.potential_values[i]) << ',' << fmt_double(commutator_norm(r, start))
               << '\n';
        }
        return;
    }
    json doc;
    doc["kind"] = "matrix";
    doc["m"] = m;
    doc["stop_reason"] = std::string(to_string(traj.stop_reason));
    doc["nearest_vertex"] = traj.nearest_vertex + 1;
    doc["steps"] = traj.steps;
    json records = json::array();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const CMatrix& r = traj.states[i].matrix();
        json rec;
        rec["t"] = traj.times[i];
        rec["real"] = matrix_json(r.real());
        rec["imag"] = matrix_json(r.imag());
        rec["eigenvalues"] = vector_json(spectral_decompose(traj.states[i], 0.0).theta);
        rec["potential"] = traj.potential_values[i];
        rec["commutator"] = commutator_norm(r, start);
        records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    if (!summary_json.empty()) doc["summary"] = json::parse(summary_json);
    os << doc.dump(2) << '\n';
}

void write_simplex_trajectory(std::ostream& os, const SimplexTrajectory& traj, OutputFormat format,
                              const std::string& summary_json) {
    const Index m = traj.states.front().dim();
    if (format == OutputFormat::csv) {
        os << "t";
        for (Index j = 1; j <= m; ++j) os << ",x_" << j;
        os << ",potential\n";
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            os << fmt_double(traj.times[i]);
            for (Index j = 0; j < m; ++j) os << ',' << fmt_double(traj.states[i][j]);
            os << ',' << fmt_double(traj.potential_values[i]) << '\n';
        }
        return;
    }
    json doc;
    doc["kind"] = "simplex";
    doc["m"] = m;
    doc["stop_reason"] = std::string(to_string(traj.stop_reason));
    doc["nearest_vertex"] = traj.nearest_vertex + 1;
    doc["steps"] = traj.steps;
    json records = json::array();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        json rec;
        rec["t"] = traj.times[i];
        rec["x"] = vector_json(traj.states[i].values());
        rec["potential"] = traj.potential_values[i];
        records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    if (!summary_json.empty()) doc["summary"] = json::parse(summary_json);
    os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Trajectory input

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double parse_cell(const std::string& cell, int line, const std::string& column) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ", column '" + column + "': not a number", line, column);
    }
}

TrajectoryFile read_csv(std::string_view text, double floor) {
    std::stringstream in{std::string(text)};
    std::string header_line;
    if (!std::getline(in, header_line)) throw ParseError("empty trajectory file", 1, "");
    const std::vector<std::string> header = split_csv(header_line);
    TrajectoryFile out;
    if (header.size() < 3 || header[0] != "t")
        throw ParseError("unrecognized trajectory header", 1, "");
    out.matrix = header.back() == "commutator";
    Index m = 0;
    if (out.matrix) {
        // t, 2 m^2 entries, m eigenvalues, potential, commutator
        const std::size_t n = header.size() - 3;
        while (static_cast<std::size_t>(2 * m * m + m) < n) ++m;
        if (static_cast<std::size_t>(2 * m * m + m) != n) throw ParseError("inconsistent matrix header", 1, "");
    } else {
        m = static_cast<Index>(header.size() - 2);
    }

    std::string row;
    int line = 1;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) continue;
        const std::vector<std::string> cells = split_csv(row);
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(line) + ": wrong number of columns", line, "");
        std::vector<double> v(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) v[i] = parse_cell(cells[i], line, header[i]);
        out.times.push_back(v[0]);
        try {
            if (out.matrix) {
                CMatrix r(m, m);
                for (Index j = 0; j < m; ++j)
                    for (Index k = 0; k < m; ++k)
                        r(j, k) = Complex(v[1 + static_cast<std::size_t>(j * m + k)],
                                          v[1 + static_cast<std::size_t>(m * m + j * m + k)]);
                out.states.emplace_back(DensityState(r, floor));
                out.potential_values.push_back(v[v.size() - 2]);
            } else {
                RVector x(m);
                for (Index j = 0; j < m; ++j) x(j) = v[1 + static_cast<std::size_t>(j)];
                out.states.emplace_back(SimplexPoint(x));
                out.potential_values.push_back(v.back());
            }
        } catch (const ContractError& e) {
            throw ValidationError("line " + std::to_string(line) + ": " + e.what());
        } catch (const RegularityError& e) {
            throw ValidationError("line " + std::to_string(line) + ": " + e.what());
        }
    }
    return out;
}

TrajectoryFile read_structured(std::string_view text, double floor) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed trajectory file: ") + e.what(), line_of(text, e.byte), "");
    }
    const Reader rd{text};
    TrajectoryFile out;
    if (!doc.contains("kind") || !doc.contains("m") || !doc.contains("records"))
        throw ParseError("trajectory file needs 'kind', 'm' and 'records'", 0, "");
    out.matrix = doc["kind"] == "matrix";
    const Index m = doc["m"].get<Index>();
    std::size_t i = 0;
    for (const json& rec : doc["records"]) {
        const std::string field = "records[" + std::to_string(i++) + "]";
        out.times.push_back(rd.number(rec.value("t", json()), field + ".t", "t"));
        out.potential_values.push_back(rd.number(rec.value("potential", json()), field + ".potential", "potential"));
        try {
            if (out.matrix) {
                const Eigen::MatrixXd re = rd.matrix(rec.value("real", json()), m, field + ".real", "real");
                const Eigen::MatrixXd im = rd.matrix(rec.value("imag", json()), m, field + ".imag", "imag");
                out.states.emplace_back(DensityState(re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>(), floor));
            } else {
                out.states.emplace_back(SimplexPoint(rd.vector(rec.value("x", json()), field + ".x", "x")));
            }
        } catch (const ContractError& e) {
            throw ValidationError(field + ": " + e.what());
        } catch (const RegularityError& e) {
            throw ValidationError(field + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

TrajectoryFile read_trajectory(std::string_view text, double positivity_floor) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return read_structured(text, positivity_floor);
    return read_csv(text, positivity_floor);
}

}  // namespace qisflow
