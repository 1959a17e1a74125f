#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "smf/pipeline.hpp"

namespace smf {

/// One parameter literal from a configuration file.
struct ParamValue {
    enum class Type { Int, Real, Str, Symbol, Placeholder, Ctor };

    Type type = Type::Int;
    long long int_value = 0;
    double real_value = 0.0;
    std::string text;              // symbol / ctor path, string body, placeholder name
    std::vector<ParamValue> args;  // ctor arguments

    static ParamValue integer(long long v);
    static ParamValue real(double v);
    static ParamValue str(std::string s);
    static ParamValue symbol(std::string path);
    static ParamValue placeholder(std::string name);
    static ParamValue ctor(std::string path, std::vector<ParamValue> args);

    /// Canonical source form (inverse of parsing).
    std::string to_text() const;

    friend bool operator==(const ParamValue& a, const ParamValue& b);
    friend bool operator!=(const ParamValue& a, const ParamValue& b) { return !(a == b); }
};

enum class ActionVerb { NamedInstanceAdd, AlgorithmStart };

std::string to_string(ActionVerb verb);

/// `name = verb` plus its `name.param.K = value` lines, in file order.
struct ConfigAction {
    std::string name;
    ActionVerb verb = ActionVerb::NamedInstanceAdd;
    std::vector<ParamValue> params;
    int line = 0; // declaration line, 1-based

    friend bool operator==(const ConfigAction& a, const ConfigAction& b) {
        return a.name == b.name && a.verb == b.verb && a.params == b.params;
    }
    friend bool operator!=(const ConfigAction& a, const ConfigAction& b) { return !(a == b); }
};

/// Parse configuration text. Grammar, one logical value per line:
///   NAME = VERB            declares an action (namedInstanceAdd | algorithmStart)
///   NAME.param.K = VALUE   attaches parameter K (contiguous from 1)
///   blank lines and '#' comments are ignored
/// VALUE is an integer, a real, a "quoted string", a <placeholder>, a dotted
/// type path, a bare instance reference, or a constructor literal
/// Path(arg, ...). Errors carry the offending line number.
std::vector<ConfigAction> parse_config(const std::string& text);

/// Render actions back to configuration text; parse(render(a)) == a.
std::string render_config(const std::vector<ConfigAction>& actions);

/// What a module constructor evaluates to.
struct SequenceKindSpec {
    std::string name; // registry path it was created from
    ComponentKind kind = ComponentKind::scalar();
    DistanceSpec refine = DistanceSpec::l2();
};

using ModuleInstance = std::variant<WindowConfig, TransformSpec, std::shared_ptr<DistanceIndex>,
                                    std::shared_ptr<SequenceStorage>, SequenceKindSpec>;

/// A resolved parameter: a literal or a module instance.
struct ResolvedValue {
    std::variant<long long, double, std::string, ModuleInstance> value;

    bool is_instance() const { return std::holds_alternative<ModuleInstance>(value); }
    long long as_int(const std::string& what) const;
    double as_real(const std::string& what) const;
    std::string as_string(const std::string& what) const;
    template <class T>
    T as_module(const std::string& what) const {
        if (const auto* inst = std::get_if<ModuleInstance>(&value))
            if (const auto* t = std::get_if<T>(inst)) return *t;
        throw ConfigError("slot '" + what + "': wrong module type");
    }
    std::string type_name() const;
};

/// Maps type paths (and short aliases) to constructors. Unknown paths are
/// rejected at instantiation time, not at parse time.
class ModuleRegistry {
public:
    using Constructor = std::function<ModuleInstance(const std::vector<ResolvedValue>&)>;

    void add(const std::string& path, Constructor ctor,
             const std::vector<std::string>& aliases = {});
    bool contains(const std::string& path) const { return ctors_.count(path) > 0; }
    ModuleInstance construct(const std::string& path,
                             const std::vector<ResolvedValue>& args) const;

    /// Registry preloaded with the built-in slicers, transformers, indexes,
    /// storages and sequence kinds under their smf.modules.* / smf.sequence.*
    /// paths and short aliases.
    static ModuleRegistry builtin();

private:
    std::map<std::string, Constructor> ctors_;
};

/// Named instances visible to configuration actions; pre-populating allows a
/// config to reference externally created modules (the paper's mIndex case).
using InstanceMap = std::map<std::string, ModuleInstance>;

/// Placeholder bindings: <name> -> replacement text, parsed as a VALUE.
using BindingMap = std::map<std::string, std::string>;

/// Execute the actions: namedInstanceAdd constructs instances in file order,
/// algorithmStart assembles and returns the runnable pipeline.
/// VariableQueryAlgorithm parameter positions: 1 algorithm path, 2 sequence
/// kind, 3 storage, 4 index, 5 data slicer, 6 query slicer, 7 w,
/// 8 transformer (optional, identity when absent).
std::shared_ptr<Pipeline> instantiate(const std::vector<ConfigAction>& actions,
                                      const ModuleRegistry& registry,
                                      const BindingMap& bindings = {},
                                      InstanceMap instances = {});

} // namespace smf
