#include "eisense/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "eisense/error.hpp"
#include "eisense/version.hpp"

namespace eisense::io {

namespace {

using json = nlohmann::json;

constexpr std::string_view kImpedanceHeader = "frequency_hz,z_real_ohm,z_imag_ohm";
constexpr std::string_view kOpticalHeader = "axis,absorbance";
constexpr std::string_view kCalibrationHeader =
    "adulterant,category,concentration_wt,z_real_ohm,z_imag_ohm,c_farad,g_siemens";

struct Line {
    std::size_t number;  // 1-based
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back({number, line});
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return out;
}

std::string at_line(std::size_t n) { return "line " + std::to_string(n) + ": "; }

double parse_number(std::string_view text, const std::string& where, ErrorKind kind) {
    const std::string_view s = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::general);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        fail(kind, where + "'" + std::string(text) + "' is not a finite decimal number");
    }
    return v;
}

// Parses the "# eisense <kind> vN" magic line and the "# key: value" block after it.
struct Preamble {
    Metadata metadata;
    std::size_t next = 0;  // index of the first line after the preamble
};

Preamble read_preamble(const std::vector<Line>& lines, std::string_view kind, int expected_version) {
    const std::string magic = "# eisense " + std::string(kind) + " v";
    require(!lines.empty(), "empty file", ErrorKind::data);
    const std::string_view first = lines.front().text;
    require(first.starts_with(magic), at_line(1) + "missing '" + magic + "<version>' header", ErrorKind::data);
    const std::string_view version_text = first.substr(magic.size());
    int version = 0;
    const auto [ptr, ec] = std::from_chars(version_text.data(), version_text.data() + version_text.size(), version);
    require(ec == std::errc{} && ptr == version_text.data() + version_text.size(),
            at_line(1) + "malformed format version", ErrorKind::data);
    require(version == expected_version,
            at_line(1) + "format version " + std::to_string(version) + " is not supported (expected " +
                std::to_string(expected_version) + ")",
            ErrorKind::data);

    Preamble p;
    std::size_t i = 1;
    for (; i < lines.size(); ++i) {
        const std::string_view t = trim(lines[i].text);
        if (t.empty()) continue;
        if (!t.starts_with('#')) break;
        const std::string_view body = trim(t.substr(1));
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) continue;  // plain comment
        p.metadata[std::string(trim(body.substr(0, colon)))] = std::string(trim(body.substr(colon + 1)));
    }
    p.next = i;
    return p;
}

void write_preamble(std::ostringstream& os, std::string_view kind, int version, const Metadata& fixed,
                    const Metadata& metadata) {
    os << "# eisense " << kind << " v" << version << '\n';
    auto emit = [&](const std::string& k, const std::string& v) {
        require(!k.empty() && k.find_first_of(":\n\r") == std::string::npos && v.find_first_of("\n\r") == std::string::npos,
                "metadata key/value contains a reserved character: " + k);
        os << "# " << k << ": " << v << '\n';
    };
    for (const auto& [k, v] : fixed) emit(k, v);
    for (const auto& [k, v] : metadata) {
        if (!fixed.contains(k)) emit(k, v);
    }
}

std::string axis_kind_name(AxisKind k) {
    return k == AxisKind::wavelength_nm ? "wavelength_nm" : "wavenumber_cm-1";
}

AxisKind parse_axis_kind(const std::string& s, std::size_t line) {
    if (s == "wavelength_nm") return AxisKind::wavelength_nm;
    if (s == "wavenumber_cm-1") return AxisKind::wavenumber_cm_inv;
    fail(ErrorKind::data, at_line(line) + "unknown axis_kind '" + s + "'");
}

// Data rows after the header; blank and '#' lines skipped.
struct Rows {
    std::size_t header_line = 0;
    std::string header;
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
};

Rows collect_rows(const std::vector<Line>& lines, std::size_t start) {
    Rows r;
    std::size_t i = start;
    for (; i < lines.size(); ++i) {
        const std::string_view t = trim(lines[i].text);
        if (t.empty() || t.starts_with('#')) continue;
        r.header_line = lines[i].number;
        r.header = std::string(t);
        ++i;
        break;
    }
    require(r.header_line != 0, "missing column header row", ErrorKind::data);
    const std::size_t columns = split_fields(r.header).size();
    for (; i < lines.size(); ++i) {
        const std::string_view t = trim(lines[i].text);
        if (t.empty() || t.starts_with('#')) continue;
        auto fields = split_fields(t);
        require(fields.size() == columns,
                at_line(lines[i].number) + "expected " + std::to_string(columns) + " columns, found " +
                    std::to_string(fields.size()),
                ErrorKind::data);
        r.rows.emplace_back(lines[i].number, std::move(fields));
    }
    return r;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open '" + path.string() + "'", ErrorKind::data);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string_view tool_version() { return kVersionString; }

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    require(ec == std::errc{}, "number formatting failed");
    return {buf, ptr};
}

double parse_double(std::string_view text, const std::string& where) {
    return parse_number(text, where, ErrorKind::data);
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, "sha256 failed",
            ErrorKind::numerical);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

// --- spectra ---------------------------------------------------------------

std::string write_spectrum_text(const ImpedanceSpectrum& s, const Metadata& metadata) {
    std::ostringstream os;
    write_preamble(os, "spectrum", kSpectrumFormatVersion, {{"kind", "impedance"}, {"axis_kind", "frequency_hz"}},
                   metadata);
    os << kImpedanceHeader << '\n';
    for (const auto& p : s.points()) {
        os << format_double(p.frequency) << ',' << format_double(p.z.real()) << ',' << format_double(p.z.imag())
           << '\n';
    }
    return os.str();
}

std::string write_spectrum_text(const SampledSpectrum& s, const Metadata& metadata) {
    std::ostringstream os;
    write_preamble(os, "spectrum", kSpectrumFormatVersion,
                   {{"kind", "optical"}, {"axis_kind", axis_kind_name(s.axis_kind())}}, metadata);
    os << kOpticalHeader << '\n';
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << format_double(s.axis()[i]) << ',' << format_double(s.values()[i]) << '\n';
    }
    return os.str();
}

SpectrumFile parse_spectrum_text(std::string_view text) {
    const auto lines = split_lines(text);
    Preamble pre = read_preamble(lines, "spectrum", kSpectrumFormatVersion);
    const auto kind_it = pre.metadata.find("kind");
    require(kind_it != pre.metadata.end(), "missing '# kind:' metadata", ErrorKind::data);
    const std::string kind = kind_it->second;
    const std::string axis_kind = pre.metadata.contains("axis_kind") ? pre.metadata.at("axis_kind") : "";
    pre.metadata.erase("kind");
    pre.metadata.erase("axis_kind");

    const Rows rows = collect_rows(lines, pre.next);
    if (kind == "impedance") {
        require(axis_kind.empty() || axis_kind == "frequency_hz", "impedance spectra use axis_kind frequency_hz",
                ErrorKind::data);
        require(rows.header == kImpedanceHeader,
                at_line(rows.header_line) + "expected header '" + std::string(kImpedanceHeader) + "'",
                ErrorKind::data);
        std::vector<SpectrumPoint> pts;
        pts.reserve(rows.rows.size());
        for (std::size_t i = 0; i < rows.rows.size(); ++i) {
            const auto& [ln, f] = rows.rows[i];
            const std::string where = at_line(ln) + "row " + std::to_string(i) + ": ";
            SpectrumPoint p{parse_number(f[0], where, ErrorKind::data),
                            {parse_number(f[1], where, ErrorKind::data), parse_number(f[2], where, ErrorKind::data)}};
            require(p.frequency > 0.0, where + "frequency must be positive", ErrorKind::data);
            require(pts.empty() || p.frequency > pts.back().frequency,
                    where + "frequency is not strictly increasing", ErrorKind::data);
            pts.push_back(p);
        }
        return ImpedanceFile{std::move(pre.metadata), ImpedanceSpectrum(std::move(pts))};
    }
    if (kind == "optical") {
        const AxisKind ak = parse_axis_kind(axis_kind, 1);
        require(rows.header == kOpticalHeader,
                at_line(rows.header_line) + "expected header '" + std::string(kOpticalHeader) + "'", ErrorKind::data);
        std::vector<double> axis;
        std::vector<double> values;
        for (std::size_t i = 0; i < rows.rows.size(); ++i) {
            const auto& [ln, f] = rows.rows[i];
            const std::string where = at_line(ln) + "row " + std::to_string(i) + ": ";
            axis.push_back(parse_number(f[0], where, ErrorKind::data));
            values.push_back(parse_number(f[1], where, ErrorKind::data));
            if (axis.size() >= 3) {
                const bool up = axis[1] > axis[0];
                const double a = axis[axis.size() - 2];
                const double b = axis.back();
                require(up ? b > a : b < a, where + "axis is not strictly monotone", ErrorKind::data);
            } else if (axis.size() == 2) {
                require(axis[1] != axis[0], where + "axis is not strictly monotone", ErrorKind::data);
            }
        }
        return OpticalFile{std::move(pre.metadata), SampledSpectrum(std::move(axis), std::move(values), ak)};
    }
    fail(ErrorKind::data, "unknown spectrum kind '" + kind + "'");
}

SpectrumFile read_spectrum(const std::filesystem::path& path) {
    try {
        return parse_spectrum_text(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

ImpedanceFile read_impedance_spectrum(const std::filesystem::path& path) {
    auto f = read_spectrum(path);
    require(std::holds_alternative<ImpedanceFile>(f), path.string() + ": expected an impedance spectrum",
            ErrorKind::data);
    return std::get<ImpedanceFile>(std::move(f));
}

OpticalFile read_optical_spectrum(const std::filesystem::path& path) {
    auto f = read_spectrum(path);
    require(std::holds_alternative<OpticalFile>(f), path.string() + ": expected an optical spectrum",
            ErrorKind::data);
    return std::get<OpticalFile>(std::move(f));
}

// --- tables ------------------------------------------------------------------

std::size_t Table::column_index(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    require(it != columns.end(), "table has no column '" + std::string(name) + "'", ErrorKind::data);
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::column(std::string_view name) const {
    const std::size_t j = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
}

Table parse_table_text(std::string_view text) {
    const auto lines = split_lines(text);
    const Rows rows = collect_rows(lines, 0);
    Table t;
    for (auto f : split_fields(rows.header)) {
        require(!f.empty(), at_line(rows.header_line) + "empty column name", ErrorKind::data);
        t.columns.emplace_back(f);
    }
    for (const auto& [ln, fields] : rows.rows) {
        std::vector<double> r;
        r.reserve(fields.size());
        for (auto f : fields) r.push_back(parse_number(f, at_line(ln), ErrorKind::data));
        t.rows.push_back(std::move(r));
    }
    return t;
}

Table read_table(const std::filesystem::path& path) {
    try {
        return parse_table_text(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

std::string write_table_text(const Table& t, const Metadata& metadata) {
    std::ostringstream os;
    for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& r : t.rows) {
        require(r.size() == t.columns.size(), "table row width does not match the header");
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_double(r[j]);
        os << '\n';
    }
    return os.str();
}

// --- calibration sets -------------------------------------------------------

std::string write_calibration_text(const std::vector<CalibrationSeries>& set, const Metadata& metadata) {
    std::ostringstream os;
    write_preamble(os, "calibration", kCalibrationFormatVersion, {}, metadata);
    os << kCalibrationHeader << '\n';
    auto row = [&](const CalibrationSeries& s, double conc, const Measurement& m) {
        require(s.adulterant.find_first_of(",\n\r#") == std::string::npos && !s.adulterant.empty(),
                "adulterant name must be non-empty and free of ',', '#' and newlines");
        os << s.adulterant << ',' << to_string(s.category) << ',' << format_double(conc) << ','
           << format_double(m.z.real()) << ',' << format_double(m.z.imag()) << ',' << format_double(m.c) << ','
           << format_double(m.g) << '\n';
    };
    for (const auto& s : set) {
        row(s, 0.0, s.reference);
        for (const auto& p : s.points) row(s, p.concentration, p.m);
    }
    return os.str();
}

std::vector<CalibrationSeries> parse_calibration_text(std::string_view text) {
    const auto lines = split_lines(text);
    const Preamble pre = read_preamble(lines, "calibration", kCalibrationFormatVersion);
    const Rows rows = collect_rows(lines, pre.next);
    require(rows.header == kCalibrationHeader,
            at_line(rows.header_line) + "expected header '" + std::string(kCalibrationHeader) + "'", ErrorKind::data);

    std::vector<CalibrationSeries> out;
    std::vector<bool> has_reference;
    for (const auto& [ln, f] : rows.rows) {
        const std::string where = at_line(ln);
        const std::string name(f[0]);
        require(!name.empty(), where + "empty adulterant name", ErrorKind::data);
        AdulterantCategory category;
        try {
            category = parse_category(f[1]);
        } catch (const Error& e) {
            throw Error(ErrorKind::data, where + e.what());
        }
        const double conc = parse_number(f[2], where, ErrorKind::data);
        const Measurement m{{parse_number(f[3], where, ErrorKind::data), parse_number(f[4], where, ErrorKind::data)},
                            parse_number(f[5], where, ErrorKind::data),
                            parse_number(f[6], where, ErrorKind::data)};

        auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.adulterant == name; });
        if (it == out.end()) {
            out.push_back(CalibrationSeries{name, category, {}, {}});
            has_reference.push_back(false);
            it = std::prev(out.end());
        }
        const auto idx = static_cast<std::size_t>(it - out.begin());
        require(it->category == category, where + "category of '" + name + "' changes between rows", ErrorKind::data);
        if (conc == 0.0) {
            require(!has_reference[idx], where + "second reference row for '" + name + "'", ErrorKind::data);
            it->reference = m;
            has_reference[idx] = true;
        } else {
            require(conc > 0.0, where + "negative concentration", ErrorKind::data);
            require(it->points.empty() || conc > it->points.back().concentration,
                    where + "concentrations of '" + name + "' are not strictly increasing", ErrorKind::data);
            it->points.push_back({conc, m});
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        require(has_reference[i], "series '" + out[i].adulterant + "' has no concentration-0 reference row",
                ErrorKind::data);
        out[i].validate();
    }
    require(!out.empty(), "calibration file has no rows", ErrorKind::data);
    return out;
}

std::vector<CalibrationSeries> read_calibration(const std::filesystem::path& path) {
    try {
        return parse_calibration_text(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

// --- signature maps ----------------------------------------------------------

std::string write_map_text(const SignatureMap& map, const Metadata& metadata) {
    json j;
    j["format"] = "eisense-map";
    j["version"] = kMapFormatVersion;
    j["f_ref_hz"] = map.f_ref;
    j["metadata"] = metadata;
    j["signatures"] = json::array();
    for (const auto& s : map.signatures) {
        const auto conc = s.radial_curve.concentrations();
        const auto pct = s.radial_curve.percents();
        j["signatures"].push_back({
            {"adulterant", s.adulterant},
            {"category", to_string(s.category)},
            {"trend", to_string(s.trend)},
            {"angle_lo_deg", s.angle_range.lo},
            {"angle_hi_deg", s.angle_range.hi},
            {"radial_curve",
             {{"concentration_wt", std::vector<double>(conc.begin(), conc.end())},
              {"percent_dz", std::vector<double>(pct.begin(), pct.end())}}},
        });
    }
    return j.dump(2) + "\n";
}

SignatureMap parse_map_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::data, std::string("signature map is not valid JSON: ") + e.what());
    }
    try {
        require(j.at("format").get<std::string>() == "eisense-map", "not an eisense signature map", ErrorKind::data);
        const int version = j.at("version").get<int>();
        require(version == kMapFormatVersion,
                "signature map version " + std::to_string(version) + " is not supported", ErrorKind::data);
        SignatureMap map;
        map.f_ref = j.at("f_ref_hz").get<double>();
        for (const auto& s : j.at("signatures")) {
            AdulterantSignature sig;
            sig.adulterant = s.at("adulterant").get<std::string>();
            sig.category = parse_category(s.at("category").get<std::string>());
            sig.trend = parse_trend(s.at("trend").get<std::string>());
            sig.angle_range = {s.at("angle_lo_deg").get<double>(), s.at("angle_hi_deg").get<double>()};
            require(sig.angle_range.lo <= sig.angle_range.hi, "signature '" + sig.adulterant + "': angle_lo > angle_hi",
                    ErrorKind::data);
            sig.radial_curve = RadialCurve(s.at("radial_curve").at("concentration_wt").get<std::vector<double>>(),
                                           s.at("radial_curve").at("percent_dz").get<std::vector<double>>());
            map.signatures.push_back(std::move(sig));
        }
        require(!map.signatures.empty(), "signature map has no signatures", ErrorKind::data);
        return map;
    } catch (const json::exception& e) {
        fail(ErrorKind::data, std::string("malformed signature map: ") + e.what());
    }
}

// --- run configuration -------------------------------------------------------

RunConfig RunConfig::parse(std::string_view text) {
    // Comments are removed up front (the TOML reader misreads a commented section header),
    // and repeated keys are caught here because the reader folds them into one array.
    std::string cleaned;
    std::set<std::string> seen;
    std::string section;
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(lines, line)) {
        ++number;
        char quote = 0;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (quote) {
                if (ch == quote) quote = 0;
            } else if (ch == '"' || ch == '\'') {
                quote = ch;
            } else if (ch == '#') {
                line.erase(i);
                break;
            }
        }
        const std::string t{trim(line)};
        cleaned += t;
        cleaned += '\n';
        if (t.empty()) continue;
        if (t.front() == '[') {
            require(t.back() == ']', "config line " + std::to_string(number) + ": malformed section header",
                    ErrorKind::config);
            section = std::string(trim(std::string_view(t).substr(1, t.size() - 2))) + ".";
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = section + std::string(trim(std::string_view(t).substr(0, eq)));
        require(seen.insert(key).second,
                "config line " + std::to_string(number) + ": key '" + key + "' is set twice", ErrorKind::config);
    }
    std::istringstream in{cleaned};
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_config(in);
    } catch (const CLI::Error& e) {
        fail(ErrorKind::config, std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        const std::string key = item.fullname();
        require(!cfg.values_.contains(key), "config key '" + key + "' is set twice", ErrorKind::config);
        cfg.values_[key] = item.inputs;
    }
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open config '" + path.string() + "'", ErrorKind::config);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void RunConfig::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : values_) {
        require(allowed.contains(k), "unknown config key '" + k + "'", ErrorKind::config);
    }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    require(it->second.size() == 1, "config key '" + key + "' expects a single number", ErrorKind::config);
    return parse_number(it->second.front(), "config key '" + key + "': ", ErrorKind::config);
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    require(it->second.size() == 1, "config key '" + key + "' expects a single integer", ErrorKind::config);
    const std::string_view s = trim(it->second.front());
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(!s.empty() && ec == std::errc{} && ptr == s.data() + s.size(),
            "config key '" + key + "': '" + std::string(s) + "' is not an integer", ErrorKind::config);
    return v;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    require(it->second.size() == 1, "config key '" + key + "' expects a single value", ErrorKind::config);
    return it->second.front();
}

std::vector<std::string> RunConfig::get_list(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return {};
    return it->second;
}

std::string RunConfig::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        out += k;
        out += '=';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += v[i];
        }
        out += '\n';
    }
    return out;
}

std::set<std::string> circuit_keys(const std::string& section) {
    std::set<std::string> out;
    for (const char* k : {"r_sol", "c_dl", "c_sol", "c_stray", "l_stray"}) out.insert(section + "." + k);
    return out;
}

CircuitParams circuit_params_from(const RunConfig& cfg, const std::string& section) {
    CircuitParams p;
    p.r_sol = cfg.get_double(section + ".r_sol", 100e3);
    p.c_dl = cfg.get_double(section + ".c_dl", 1e-6);
    p.c_sol = cfg.get_double(section + ".c_sol", 40e-12);
    p.c_stray = cfg.get_double(section + ".c_stray", 0.0);
    p.l_stray = cfg.get_double(section + ".l_stray", 0.0);
    try {
        p.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::config, "[" + section + "] " + e.what());
    }
    return p;
}

std::set<std::string> sweep_keys() {
    return {"sweep.f_start", "sweep.f_stop", "sweep.points", "sweep.amplitude", "sweep.noise_rel", "sweep.seed"};
}

SweepConfig sweep_config_from(const RunConfig& cfg) {
    SweepConfig s;
    s.f_start = cfg.get_double("sweep.f_start", s.f_start);
    s.f_stop = cfg.get_double("sweep.f_stop", s.f_stop);
    const long long points = cfg.get_int("sweep.points", s.points);
    require(points >= 2 && points <= 10'000'000, "sweep.points out of range", ErrorKind::config);
    s.points = static_cast<int>(points);
    s.amplitude = cfg.get_double("sweep.amplitude", s.amplitude);
    s.noise_rel = cfg.get_double("sweep.noise_rel", s.noise_rel);
    const long long seed = cfg.get_int("sweep.seed", 0);
    require(seed >= 0, "sweep.seed must be >= 0", ErrorKind::config);
    s.seed = static_cast<std::uint64_t>(seed);
    s.validate();
    return s;
}

std::set<std::string> dielectric_keys() {
    std::set<std::string> out;
    for (const char* k : {"n_d", "p_d", "n_i", "p_i", "p_w", "n_i1", "n_i2", "n_w", "temperature", "sigma", "area",
                          "gap"}) {
        out.insert(std::string("dielectric.") + k);
    }
    return out;
}

DielectricSystem dielectric_from(const RunConfig& cfg) {
    DielectricSystem d;
    d.n_d = cfg.get_double("dielectric.n_d", d.n_d);
    d.p_d = cfg.get_double("dielectric.p_d", d.p_d);
    d.n_i = cfg.get_double("dielectric.n_i", d.n_i);
    d.p_i = cfg.get_double("dielectric.p_i", d.p_i);
    d.p_w = cfg.get_double("dielectric.p_w", d.p_w);
    d.n_i1 = cfg.get_double("dielectric.n_i1", d.n_i1);
    d.n_i2 = cfg.get_double("dielectric.n_i2", d.n_i2);
    d.n_w = cfg.get_double("dielectric.n_w", d.n_w);
    d.temperature = cfg.get_double("dielectric.temperature", d.temperature);
    d.sigma = cfg.get_double("dielectric.sigma", d.sigma);
    d.area = cfg.get_double("dielectric.area", d.area);
    d.gap = cfg.get_double("dielectric.gap", d.gap);
    try {
        d.validate();
        require(d.n_i == 0.0 || d.n_i2 > 0.0, "n_i2 must be > 0 when n_i > 0");
    } catch (const Error& e) {
        throw Error(ErrorKind::config, std::string("[dielectric] ") + e.what());
    }
    return d;
}

// --- output ------------------------------------------------------------------

std::filesystem::path write_atomic(const std::filesystem::path& out_dir, const std::string& file_name,
                                   std::string_view content) {
    require(!file_name.empty() && file_name != "." && file_name != ".." &&
                file_name.find_first_of("/\\") == std::string::npos,
            "output name '" + file_name + "' must be a bare file name", ErrorKind::config);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    require(!ec, "cannot create output directory '" + out_dir.string() + "': " + ec.message(), ErrorKind::data);

    const std::filesystem::path target = out_dir / file_name;
    const std::filesystem::path temp = out_dir / ("." + file_name + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), "cannot write '" + temp.string() + "'", ErrorKind::data);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        require(static_cast<bool>(out), "write to '" + temp.string() + "' failed", ErrorKind::data);
    }
    std::filesystem::rename(temp, target, ec);
    require(!ec, "cannot rename onto '" + target.string() + "': " + ec.message(), ErrorKind::data);
    return target;
}

}  // namespace eisense::io
