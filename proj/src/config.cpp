#include "smf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace smf {
namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_name(const std::string& s) {
    if (s.empty() || !is_name_start(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), is_name_char);
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

// Recursive-descent parser for one VALUE.
class ValueParser {
public:
    ValueParser(const std::string& text, int line) : text_(text), line_(line) {}

    ParamValue parse_all() {
        ParamValue v = parse_value();
        skip_ws();
        if (pos_ != text_.size())
            throw ConfigError("trailing characters after value: '" + text_.substr(pos_) + "'",
                              line_);
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg, line_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    ParamValue parse_value() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a value");
        const char c = peek();
        if (c == '<') return parse_placeholder();
        if (c == '"') return parse_string();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')
            return parse_number();
        if (is_name_start(c)) return parse_symbol_or_ctor();
        fail(std::string("unexpected character '") + c + "' in value");
    }

    ParamValue parse_placeholder() {
        ++pos_; // '<'
        std::string name;
        while (pos_ < text_.size() && text_[pos_] != '>') name += text_[pos_++];
        if (pos_ >= text_.size()) fail("unterminated placeholder '<" + name + "'");
        ++pos_; // '>'
        if (!valid_name(name)) fail("invalid placeholder name '<" + name + ">'");
        return ParamValue::placeholder(std::move(name));
    }

    ParamValue parse_string() {
        ++pos_; // '"'
        std::string body;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            char c = text_[pos_++];
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("unterminated string escape");
                const char esc = text_[pos_++];
                if (esc == '"' || esc == '\\') c = esc;
                else fail(std::string("unsupported string escape '\\") + esc + "'");
            }
            body += c;
        }
        if (pos_ >= text_.size()) fail("unterminated string literal");
        ++pos_; // closing '"'
        return ParamValue::str(std::move(body));
    }

    ParamValue parse_number() {
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        bool has_dot = false;
        bool has_exp = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '.' && !has_dot && !has_exp) {
                has_dot = true;
                ++pos_;
            } else if ((c == 'e' || c == 'E') && !has_exp) {
                has_exp = true;
                ++pos_;
                if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
            } else {
                break;
            }
        }
        const std::string token = text_.substr(start, pos_ - start);
        errno = 0;
        char* end = nullptr;
        if (!has_dot && !has_exp) {
            const long long v = std::strtoll(token.c_str(), &end, 10);
            if (end != token.c_str() + token.size() || errno == ERANGE)
                fail("invalid integer literal '" + token + "'");
            return ParamValue::integer(v);
        }
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size())
            fail("invalid number literal '" + token + "'");
        return ParamValue::real(v);
    }

    ParamValue parse_symbol_or_ctor() {
        std::string path;
        while (true) {
            if (!is_name_start(peek())) fail("invalid identifier in '" + text_ + "'");
            while (is_name_char(peek())) path += text_[pos_++];
            if (peek() == '.') {
                path += text_[pos_++];
                continue;
            }
            break;
        }
        skip_ws();
        if (peek() != '(') return ParamValue::symbol(std::move(path));
        ++pos_; // '('
        std::vector<ParamValue> args;
        skip_ws();
        if (peek() == ')') {
            ++pos_;
            return ParamValue::ctor(std::move(path), std::move(args));
        }
        while (true) {
            args.push_back(parse_value());
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            if (peek() == ')') {
                ++pos_;
                return ParamValue::ctor(std::move(path), std::move(args));
            }
            fail("expected ',' or ')' in argument list of '" + path + "'");
        }
    }

    const std::string& text_;
    int line_;
    std::size_t pos_ = 0;
};

} // namespace

ParamValue ParamValue::integer(long long v) {
    ParamValue p;
    p.type = Type::Int;
    p.int_value = v;
    return p;
}

ParamValue ParamValue::real(double v) {
    ParamValue p;
    p.type = Type::Real;
    p.real_value = v;
    return p;
}

ParamValue ParamValue::str(std::string s) {
    ParamValue p;
    p.type = Type::Str;
    p.text = std::move(s);
    return p;
}

ParamValue ParamValue::symbol(std::string path) {
    ParamValue p;
    p.type = Type::Symbol;
    p.text = std::move(path);
    return p;
}

ParamValue ParamValue::placeholder(std::string name) {
    ParamValue p;
    p.type = Type::Placeholder;
    p.text = std::move(name);
    return p;
}

ParamValue ParamValue::ctor(std::string path, std::vector<ParamValue> args) {
    ParamValue p;
    p.type = Type::Ctor;
    p.text = std::move(path);
    p.args = std::move(args);
    return p;
}

std::string ParamValue::to_text() const {
    switch (type) {
        case Type::Int: return std::to_string(int_value);
        case Type::Real: return format_real(real_value);
        case Type::Str: {
            std::string out = "\"";
            for (char c : text) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            return out + "\"";
        }
        case Type::Symbol: return text;
        case Type::Placeholder: return "<" + text + ">";
        case Type::Ctor: {
            std::string out = text + "(";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i > 0) out += ", ";
                out += args[i].to_text();
            }
            return out + ")";
        }
    }
    return "";
}

bool operator==(const ParamValue& a, const ParamValue& b) {
    if (a.type != b.type) return false;
    switch (a.type) {
        case ParamValue::Type::Int: return a.int_value == b.int_value;
        case ParamValue::Type::Real: return a.real_value == b.real_value;
        case ParamValue::Type::Str:
        case ParamValue::Type::Symbol:
        case ParamValue::Type::Placeholder: return a.text == b.text;
        case ParamValue::Type::Ctor: return a.text == b.text && a.args == b.args;
    }
    return false;
}

std::string to_string(ActionVerb verb) {
    return verb == ActionVerb::NamedInstanceAdd ? "namedInstanceAdd" : "algorithmStart";
}

std::vector<ConfigAction> parse_config(const std::string& text) {
    std::vector<ConfigAction> actions;
    std::map<std::string, std::size_t> by_name;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'NAME = VERB' or 'NAME.param.K = VALUE'", line_no);
        const std::string lhs = trim(line.substr(0, eq));
        const std::string rhs = trim(line.substr(eq + 1));

        const std::size_t dot = lhs.find('.');
        if (dot == std::string::npos) {
            // action declaration
            if (!valid_name(lhs)) throw ConfigError("invalid action name '" + lhs + "'", line_no);
            if (by_name.count(lhs))
                throw ConfigError("duplicate action name '" + lhs + "'", line_no);
            ConfigAction action;
            action.name = lhs;
            action.line = line_no;
            if (rhs == "namedInstanceAdd") action.verb = ActionVerb::NamedInstanceAdd;
            else if (rhs == "algorithmStart") action.verb = ActionVerb::AlgorithmStart;
            else throw ConfigError("unknown action verb '" + rhs + "'", line_no);
            by_name.emplace(action.name, actions.size());
            actions.push_back(std::move(action));
            continue;
        }

        // parameter line
        const std::string name = lhs.substr(0, dot);
        const std::string rest = lhs.substr(dot + 1);
        if (rest.rfind("param.", 0) != 0 || !valid_name(name))
            throw ConfigError("expected 'NAME = VERB' or 'NAME.param.K = VALUE'", line_no);
        const std::string k_text = rest.substr(6);
        char* end = nullptr;
        const long k = std::strtol(k_text.c_str(), &end, 10);
        if (k_text.empty() || end != k_text.c_str() + k_text.size() || k < 1)
            throw ConfigError("invalid parameter index '" + k_text + "'", line_no);
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw ConfigError("parameter for undeclared action '" + name + "'", line_no);
        ConfigAction& action = actions[it->second];
        if (static_cast<std::size_t>(k) != action.params.size() + 1)
            throw ConfigError("non-contiguous parameter index: expected '" + name + ".param." +
                                  std::to_string(action.params.size() + 1) + "', got param." +
                                  std::to_string(k),
                              line_no);
        action.params.push_back(ValueParser(rhs, line_no).parse_all());
    }
    return actions;
}

std::string render_config(const std::vector<ConfigAction>& actions) {
    std::string out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (i > 0) out += "\n";
        const ConfigAction& a = actions[i];
        out += a.name + " = " + to_string(a.verb) + "\n";
        for (std::size_t k = 0; k < a.params.size(); ++k)
            out += a.name + ".param." + std::to_string(k + 1) + " = " + a.params[k].to_text() +
                   "\n";
    }
    return out;
}

long long ResolvedValue::as_int(const std::string& what) const {
    if (const auto* v = std::get_if<long long>(&value)) return *v;
    throw ConfigError("slot '" + what + "': expected an integer, got " + type_name());
}

double ResolvedValue::as_real(const std::string& what) const {
    if (const auto* v = std::get_if<double>(&value)) return *v;
    if (const auto* v = std::get_if<long long>(&value)) return static_cast<double>(*v);
    throw ConfigError("slot '" + what + "': expected a number, got " + type_name());
}

std::string ResolvedValue::as_string(const std::string& what) const {
    if (const auto* v = std::get_if<std::string>(&value)) return *v;
    throw ConfigError("slot '" + what + "': expected a string, got " + type_name());
}

std::string ResolvedValue::type_name() const {
    struct Visitor {
        std::string operator()(long long) const { return "integer"; }
        std::string operator()(double) const { return "real"; }
        std::string operator()(const std::string&) const { return "string"; }
        std::string operator()(const ModuleInstance& m) const {
            struct Inner {
                std::string operator()(const WindowConfig&) const { return "slicer"; }
                std::string operator()(const TransformSpec&) const { return "transformer"; }
                std::string operator()(const std::shared_ptr<DistanceIndex>&) const {
                    return "index";
                }
                std::string operator()(const std::shared_ptr<SequenceStorage>&) const {
                    return "storage";
                }
                std::string operator()(const SequenceKindSpec&) const { return "sequence kind"; }
            };
            return std::visit(Inner{}, m);
        }
    };
    return std::visit(Visitor{}, value);
}

void ModuleRegistry::add(const std::string& path, Constructor ctor,
                         const std::vector<std::string>& aliases) {
    ctors_[path] = ctor;
    for (const std::string& alias : aliases) ctors_[alias] = ctor;
}

ModuleInstance ModuleRegistry::construct(const std::string& path,
                                         const std::vector<ResolvedValue>& args) const {
    auto it = ctors_.find(path);
    if (it == ctors_.end()) throw ConfigError("unknown type path '" + path + "'");
    return it->second(args);
}

namespace {

void expect_args(const std::vector<ResolvedValue>& args, std::size_t min, std::size_t max,
                 const std::string& path) {
    if (args.size() < min || args.size() > max) {
        std::string expected = min == max ? std::to_string(min)
                                          : std::to_string(min) + ".." + std::to_string(max);
        throw ConfigError("'" + path + "' expects " + expected + " argument(s), got " +
                          std::to_string(args.size()));
    }
}

Index positive_index(const ResolvedValue& v, const std::string& what) {
    const long long n = v.as_int(what);
    if (n < 1) throw ConfigError("slot '" + what + "': must be >= 1, got " + std::to_string(n));
    return static_cast<Index>(n);
}

} // namespace

ModuleRegistry ModuleRegistry::builtin() {
    ModuleRegistry r;

    r.add("smf.modules.slicer.SlidingSlicer",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "SlidingSlicer");
              return WindowConfig(positive_index(args[0], "w"), SlicerKind::Sliding);
          },
          {"SlidingSlicer"});
    r.add("smf.modules.slicer.DisjointSlicer",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "DisjointSlicer");
              return WindowConfig(positive_index(args[0], "w"), SlicerKind::Disjoint);
          },
          {"DisjointSlicer"});

    r.add("smf.modules.transformer.IdentityTransformer",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 0, 0, "IdentityTransformer");
              return TransformSpec::identity();
          },
          {"IdentityTransformer"});
    r.add("smf.modules.transformer.DFTTransformer",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "DFTTransformer");
              return TransformSpec::dft(positive_index(args[0], "k"));
          },
          {"DFTTransformer"});
    r.add("smf.modules.transformer.PAATransformer",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "PAATransformer");
              return TransformSpec::paa(positive_index(args[0], "m"));
          },
          {"PAATransformer"});

    r.add("smf.modules.index.LinearScanIndex",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 0, 1, "LinearScanIndex");
              const double p = args.empty() ? 2.0 : args[0].as_real("p");
              return std::static_pointer_cast<DistanceIndex>(
                  std::make_shared<LinearScanIndex>(IndexDistance::lp(p)));
          },
          {"LinearScanIndex"});
    r.add("smf.modules.index.PivotTableIndex",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 0, 1, "PivotTableIndex");
              const double p = args.empty() ? 2.0 : args[0].as_real("p");
              return std::static_pointer_cast<DistanceIndex>(
                  std::make_shared<PivotTableIndex>(IndexDistance::lp(p)));
          },
          {"PivotTableIndex"});
    // Delegating wrapper around an already created index instance.
    r.add("smf.modules.index.ApproximateAlgorithmDistanceIndex",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "ApproximateAlgorithmDistanceIndex");
              return args[0].as_module<std::shared_ptr<DistanceIndex>>("index");
          },
          {"ApproximateAlgorithmDistanceIndex"});

    r.add("smf.modules.seqstorage.MemorySequenceStorage",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 0, 0, "MemorySequenceStorage");
              return std::static_pointer_cast<SequenceStorage>(
                  std::make_shared<MemorySequenceStorage>());
          },
          {"MemorySequenceStorage"});
    r.add("smf.modules.seqstorage.FileSequenceStorage",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "FileSequenceStorage");
              return std::static_pointer_cast<SequenceStorage>(
                  std::make_shared<FileSequenceStorage>(args[0].as_string("path")));
          },
          {"FileSequenceStorage"});

    r.add("smf.sequence.impl.SequenceFloatL2",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 0, 0, "SequenceFloatL2");
              return SequenceKindSpec{"smf.sequence.impl.SequenceFloatL2",
                                      ComponentKind::scalar(), DistanceSpec::l2()};
          },
          {"SequenceFloatL2"});
    r.add("smf.sequence.impl.SequenceFloatLp",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 1, 1, "SequenceFloatLp");
              return SequenceKindSpec{"smf.sequence.impl.SequenceFloatLp",
                                      ComponentKind::scalar(),
                                      DistanceSpec::lp(args[0].as_real("p"))};
          },
          {"SequenceFloatLp"});
    // Refinement by DTW: range answers become heuristic and say so.
    r.add("smf.sequence.impl.SequenceFloatDTW",
          [](const std::vector<ResolvedValue>& args) -> ModuleInstance {
              expect_args(args, 0, 1, "SequenceFloatDTW");
              std::optional<Index> band;
              if (!args.empty()) {
                  const long long b = args[0].as_int("band");
                  if (b >= 0) band = static_cast<Index>(b);
              }
              return SequenceKindSpec{"smf.sequence.impl.SequenceFloatDTW",
                                      ComponentKind::scalar(), DistanceSpec::dtw(band)};
          },
          {"SequenceFloatDTW"});

    return r;
}

namespace {

class Instantiator {
public:
    Instantiator(const ModuleRegistry& registry, const BindingMap& bindings,
                 InstanceMap instances)
        : registry_(registry), bindings_(bindings), instances_(std::move(instances)) {}

    std::shared_ptr<Pipeline> run(const std::vector<ConfigAction>& actions) {
        std::shared_ptr<Pipeline> pipeline;
        for (const ConfigAction& action : actions) {
            if (action.verb == ActionVerb::NamedInstanceAdd) {
                add_instance(action);
            } else {
                if (pipeline)
                    throw ConfigError("action '" + action.name +
                                          "': multiple algorithmStart actions",
                                      action.line);
                pipeline = start_algorithm(action);
            }
        }
        if (!pipeline) throw ConfigError("configuration contains no algorithmStart action");
        return pipeline;
    }

private:
    void add_instance(const ConfigAction& action) {
        if (action.params.size() != 1)
            throw ConfigError("action '" + action.name +
                                  "': namedInstanceAdd expects exactly 1 parameter, got " +
                                  std::to_string(action.params.size()),
                              action.line);
        if (instances_.count(action.name))
            throw ConfigError("action '" + action.name + "': instance name already in use",
                              action.line);
        ResolvedValue v = resolve(action.params[0], action.line);
        if (!v.is_instance())
            throw ConfigError("action '" + action.name +
                                  "': parameter must construct or reference a module, got " +
                                  v.type_name(),
                              action.line);
        instances_.emplace(action.name, std::get<ModuleInstance>(v.value));
    }

    std::shared_ptr<Pipeline> start_algorithm(const ConfigAction& action) {
        static const char* kSlots[8] = {"algorithm",  "sequenceKind", "seqStorage", "index",
                                        "dataSlicer", "querySlicer",  "w",          "transformer"};
        if (action.params.size() < 7) {
            throw ConfigError("action '" + action.name + "': missing slot '" +
                                  kSlots[action.params.size()] + "' (param " +
                                  std::to_string(action.params.size() + 1) + ")",
                              action.line);
        }
        if (action.params.size() > 8)
            throw ConfigError("action '" + action.name + "': too many parameters (at most 8)",
                              action.line);

        const ParamValue& algo = action.params[0];
        if (algo.type != ParamValue::Type::Symbol ||
            (algo.text != "smf.algorithms.VariableQueryAlgorithm" &&
             algo.text != "VariableQueryAlgorithm"))
            throw ConfigError("action '" + action.name + "': unknown algorithm '" +
                                  algo.to_text() + "'",
                              action.line);

        PipelineSkeleton skeleton;
        const auto kind_spec =
            resolve(action.params[1], action.line).as_module<SequenceKindSpec>("sequenceKind");
        skeleton.kind = kind_spec.kind;
        skeleton.refine_distance = kind_spec.refine;
        skeleton.storage = resolve(action.params[2], action.line)
                               .as_module<std::shared_ptr<SequenceStorage>>("seqStorage");
        skeleton.window_index = resolve(action.params[3], action.line)
                                    .as_module<std::shared_ptr<DistanceIndex>>("index");
        skeleton.data_slicer =
            resolve(action.params[4], action.line).as_module<WindowConfig>("dataSlicer");
        skeleton.query_slicer =
            resolve(action.params[5], action.line).as_module<WindowConfig>("querySlicer");
        skeleton.w = static_cast<Index>(resolve(action.params[6], action.line).as_int("w"));
        skeleton.transformer =
            action.params.size() > 7
                ? resolve(action.params[7], action.line).as_module<TransformSpec>("transformer")
                : TransformSpec::identity();

        try {
            return std::make_shared<Pipeline>(std::move(skeleton));
        } catch (const ConfigError& e) {
            throw ConfigError("action '" + action.name + "': " + e.what(), action.line);
        }
    }

    ResolvedValue resolve(const ParamValue& value, int line, int depth = 0) {
        if (depth > 8) throw ConfigError("placeholder substitution too deep", line);
        switch (value.type) {
            case ParamValue::Type::Int: return {value.int_value};
            case ParamValue::Type::Real: return {value.real_value};
            case ParamValue::Type::Str: return {value.text};
            case ParamValue::Type::Placeholder: {
                auto it = bindings_.find(value.text);
                if (it == bindings_.end())
                    throw ConfigError("unresolved placeholder '<" + value.text + ">'", line);
                ParamValue substituted = ValueParser(it->second, line).parse_all();
                return resolve(substituted, line, depth + 1);
            }
            case ParamValue::Type::Symbol: {
                auto it = instances_.find(value.text);
                if (it != instances_.end()) return {it->second};
                if (registry_.contains(value.text)) return {registry_.construct(value.text, {})};
                if (value.text.find('.') != std::string::npos)
                    throw ConfigError("unknown type path '" + value.text + "'", line);
                throw ConfigError("unknown instance '" + value.text + "'", line);
            }
            case ParamValue::Type::Ctor: {
                std::vector<ResolvedValue> args;
                args.reserve(value.args.size());
                for (const ParamValue& arg : value.args)
                    args.push_back(resolve(arg, line, depth + 1));
                return {registry_.construct(value.text, args)};
            }
        }
        throw ConfigError("unsupported value", line);
    }

    const ModuleRegistry& registry_;
    const BindingMap& bindings_;
    InstanceMap instances_;
};

} // namespace

std::shared_ptr<Pipeline> instantiate(const std::vector<ConfigAction>& actions,
                                      const ModuleRegistry& registry, const BindingMap& bindings,
                                      InstanceMap instances) {
    return Instantiator(registry, bindings, std::move(instances)).run(actions);
}

} // namespace smf
