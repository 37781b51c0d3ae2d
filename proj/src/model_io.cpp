#include "finseer/model_io.hpp"

#include "finseer/errors.hpp"
#include "finseer/ohlcv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace finseer {

namespace {

constexpr std::string_view kMagic = "FINSEER-MODEL v1";

void append_values(std::string& out, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_double(values[i]);
    }
    out += '\n';
}

void serialize_core(std::string& out, const MlpNetwork& net) {
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        out += "layer " + std::to_string(l + 1) + ' ' + std::to_string(net.weights[l].size()) +
               ' ' + std::to_string(net.weights[l][0].size()) + '\n';
        for (const std::vector<double>& row : net.weights[l]) append_values(out, row);
        out += "bias ";
        append_values(out, net.biases[l]);
    }
}

// Line-oriented reader that tracks line numbers for error messages.
class LineReader {
public:
    explicit LineReader(const std::string& text) : text_(text) {}

    bool next(std::string_view& line) {
        while (pos_ <= text_.size()) {
            std::size_t eol = text_.find('\n', pos_);
            std::string_view raw = (eol == std::string::npos)
                                       ? std::string_view(text_).substr(pos_)
                                       : std::string_view(text_).substr(pos_, eol - pos_);
            pos_ = (eol == std::string::npos) ? text_.size() + 1 : eol + 1;
            ++line_no_;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (raw.empty()) continue;
            line = raw;
            return true;
        }
        return false;
    }

    std::string_view expect(const char* what) {
        std::string_view line;
        if (!next(line)) {
            throw ParseError("model file line " + std::to_string(line_no_ + 1) +
                             ": unexpected end of file, expected " + what);
        }
        return line;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("model file line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_value(std::string_view tok, LineReader& reader) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        reader.fail("unparsable number '" + std::string(tok) + "'");
    }
    return v;
}

long parse_integer(std::string_view tok, LineReader& reader) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        reader.fail("unparsable integer '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<double> parse_values(std::span<const std::string_view> toks, LineReader& reader) {
    std::vector<double> out;
    out.reserve(toks.size());
    for (std::string_view t : toks) out.push_back(parse_value(t, reader));
    return out;
}

MlpNetwork parse_core(LineReader& reader, const std::vector<int>& layer_sizes) {
    MlpNetwork net = MlpNetwork::make(layer_sizes);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        auto toks = tokens_of(reader.expect("a layer header"));
        if (toks.size() != 4 || toks[0] != "layer") reader.fail("expected 'layer <l> <units> <inputs>'");
        if (parse_integer(toks[1], reader) != static_cast<long>(l + 1)) {
            reader.fail("layer sections out of order");
        }
        const long units = parse_integer(toks[2], reader);
        const long inputs = parse_integer(toks[3], reader);
        if (units != static_cast<long>(net.weights[l].size()) ||
            inputs != static_cast<long>(net.weights[l][0].size())) {
            reader.fail("layer shape does not match the architecture descriptor");
        }
        for (std::vector<double>& row : net.weights[l]) {
            auto row_toks = tokens_of(reader.expect("a weight row"));
            if (row_toks.size() != row.size()) reader.fail("wrong weight-row length");
            row = parse_values(row_toks, reader);
        }
        auto bias_toks = tokens_of(reader.expect("a bias row"));
        if (bias_toks.size() != net.biases[l].size() + 1 || bias_toks[0] != "bias") {
            reader.fail("expected 'bias <values>'");
        }
        net.biases[l] =
            parse_values(std::span(bias_toks).subspan(1), reader);
    }
    return net;
}

} // namespace

std::string serialize_model(const Model& model) {
    std::string out(kMagic);
    out += '\n';

    const MlpNetwork* core = nullptr;
    if (model.is_tdrnn()) {
        const TdrnnNetwork& net = std::get<TdrnnNetwork>(model.network);
        out += "tdrnn " + std::to_string(net.delay_depth) + ' ' +
               std::to_string(net.context_size);
        for (int s : net.core.layer_sizes) out += ' ' + std::to_string(s);
        out += '\n';
        core = &net.core;
    } else {
        const MlpNetwork& net = std::get<MlpNetwork>(model.network);
        out += "mlp";
        for (int s : net.layer_sizes) out += ' ' + std::to_string(s);
        out += '\n';
        core = &net;
    }

    const Normalizer& n = model.normalizer;
    out += "range " + format_double(n.lo) + ' ' + format_double(n.hi) + '\n';
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        out += std::string("feature ") + feature_name(static_cast<Feature>(f)) + ' ' +
               format_double(n.min[f]) + ' ' + format_double(n.max[f]) + '\n';
    }

    serialize_core(out, *core);

    if (model.is_tdrnn()) {
        out += "context ";
        append_values(out, std::get<TdrnnNetwork>(model.network).context_state);
    }
    return out;
}

Model parse_model(const std::string& text) {
    LineReader reader(text);

    if (reader.expect("the FINSEER-MODEL header") != kMagic) {
        reader.fail("not a FINSEER-MODEL v1 file");
    }

    auto arch_toks = tokens_of(reader.expect("an architecture descriptor"));
    if (arch_toks.empty() || (arch_toks[0] != "mlp" && arch_toks[0] != "tdrnn")) {
        reader.fail("architecture must be 'mlp' or 'tdrnn'");
    }
    const bool tdrnn = arch_toks[0] == "tdrnn";

    int delay_depth = 0, context_size = 0;
    std::vector<int> layer_sizes;
    std::size_t size_start = 1;
    if (tdrnn) {
        if (arch_toks.size() < 5) reader.fail("expected 'tdrnn <D> <C> <layer sizes...>'");
        delay_depth = static_cast<int>(parse_integer(arch_toks[1], reader));
        context_size = static_cast<int>(parse_integer(arch_toks[2], reader));
        size_start = 3;
    } else if (arch_toks.size() < 3) {
        reader.fail("expected 'mlp <layer sizes...>'");
    }
    for (std::size_t i = size_start; i < arch_toks.size(); ++i) {
        layer_sizes.push_back(static_cast<int>(parse_integer(arch_toks[i], reader)));
    }
    if (tdrnn) {
        if (delay_depth < 1 || context_size < 1) reader.fail("tdrnn needs D >= 1 and C >= 1");
        const long expected =
            static_cast<long>(kFeatureCount) * delay_depth + context_size;
        if (layer_sizes.front() != expected) {
            reader.fail("core input width " + std::to_string(layer_sizes.front()) +
                        " does not equal 5*D + C = " + std::to_string(expected));
        }
    }

    Model model;
    auto range_toks = tokens_of(reader.expect("the normalizer range"));
    if (range_toks.size() != 3 || range_toks[0] != "range") reader.fail("expected 'range <lo> <hi>'");
    model.normalizer.lo = parse_value(range_toks[1], reader);
    model.normalizer.hi = parse_value(range_toks[2], reader);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        auto toks = tokens_of(reader.expect("a feature line"));
        if (toks.size() != 4 || toks[0] != "feature" ||
            toks[1] != feature_name(static_cast<Feature>(f))) {
            reader.fail(std::string("expected 'feature ") +
                        feature_name(static_cast<Feature>(f)) + " <min> <max>'");
        }
        model.normalizer.min[f] = parse_value(toks[2], reader);
        model.normalizer.max[f] = parse_value(toks[3], reader);
    }

    MlpNetwork core = [&] {
        try {
            return parse_core(reader, layer_sizes);
        } catch (const ParameterError& e) {
            reader.fail(e.what()); // bad layer sizes in the descriptor
        }
    }();

    if (tdrnn) {
        TdrnnNetwork net;
        net.delay_depth = delay_depth;
        net.context_size = context_size;
        net.core = std::move(core);
        auto toks = tokens_of(reader.expect("the context line"));
        if (toks.size() != static_cast<std::size_t>(context_size) + 1 || toks[0] != "context") {
            reader.fail("expected 'context <" + std::to_string(context_size) + " values>'");
        }
        net.context_state = parse_values(std::span(toks).subspan(1), reader);
        model.network = std::move(net);
    } else {
        model.network = std::move(core);
    }

    std::string_view extra;
    if (reader.next(extra)) reader.fail("unexpected trailing content '" + std::string(extra) + "'");
    return model;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("failed to move '" + tmp.string() + "' into place: " + ec.message());
    }
}

void save_model(const Model& model, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_model(model));
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace finseer
