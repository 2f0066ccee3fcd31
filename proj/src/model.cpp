#include "mps/model.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include "mps/csvio.hpp"

namespace mps {

namespace {

constexpr std::array<std::pair<Model, const char*>, 6> kModelNames = {{
    {Model::Classical3D, "classical_3d"},
    {Model::Fractional3D, "fractional_3d"},
    {Model::Fractional2D, "fractional_2d"},
    {Model::LogNoAngular, "log_no_angular"},
    {Model::LogWithAngular, "log_with_angular"},
    {Model::NoGradDiv, "no_grad_div"},
}};

bool is_log_model(Model m) {
    return m == Model::LogNoAngular || m == Model::LogWithAngular;
}

}  // namespace

std::string model_label(Model m) {
    for (auto& [model, name] : kModelNames)
        if (model == m) return name;
    throw std::logic_error("unreachable");
}

Model model_by_label(const std::string& label) {
    for (auto& [model, name] : kModelNames)
        if (label == name) return model;
    std::string known;
    for (auto& [model, name] : kModelNames) {
        if (!known.empty()) known += ", ";
        known += name;
    }
    throw std::invalid_argument("unknown model '" + label + "' (known: " +
                                known + ")");
}

int ModelSpec::dim() const { return model == Model::Fractional2D ? 2 : 3; }

bool ModelSpec::w_scalar() const { return model == Model::Fractional2D; }

int ModelSpec::w_components() const { return w_scalar() ? 1 : 3; }

bool ModelSpec::has_graddiv() const {
    return dim() == 3 && model != Model::NoGradDiv;
}

DissipationSpec ModelSpec::u_dissipation() const {
    switch (model) {
        case Model::Classical3D:
            return DissipationSpec::fractional(1.0);
        case Model::Fractional3D:
        case Model::Fractional2D:
        case Model::NoGradDiv:
            return DissipationSpec::fractional(params.alpha);
        case Model::LogNoAngular:
        case Model::LogWithAngular:
            if (!params.g)
                throw std::invalid_argument(
                    "log model without a g weight; set params.g");
            return DissipationSpec::logarithmic(params.alpha, *params.g);
    }
    throw std::logic_error("unreachable");
}

DissipationSpec ModelSpec::w_dissipation() const {
    switch (model) {
        case Model::Classical3D:
            return DissipationSpec::fractional(1.0);
        case Model::Fractional3D:
        case Model::Fractional2D:
        case Model::LogWithAngular:
            return DissipationSpec::fractional(params.beta);
        case Model::LogNoAngular:
        case Model::NoGradDiv:
            return DissipationSpec::none();
    }
    throw std::logic_error("unreachable");
}

void ModelSpec::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0))
            throw std::invalid_argument(std::string("coefficient ") + name +
                                        " must be >= 0");
    };
    nonneg(params.nu, "nu");
    nonneg(params.kappa, "kappa");
    nonneg(params.gamma, "gamma");
    nonneg(params.mu, "mu");
    nonneg(params.alpha, "alpha");
    nonneg(params.beta, "beta");
    if (is_log_model(model)) {
        if (!params.g)
            throw std::invalid_argument("model " + model_label(model) +
                                        " requires a g weight");
        if (params.alpha <= 0.0)
            throw std::invalid_argument(
                "log-weakened dissipation requires alpha > 0");
    }
}

std::string ModelSpec::describe() const {
    std::string s = "model=" + model_label(model);
    s += ";nu=" + format_double(params.nu);
    s += ";kappa=" + format_double(params.kappa);
    s += ";gamma=" + format_double(params.gamma);
    s += ";mu=" + format_double(params.mu);
    s += ";alpha=" + format_double(params.alpha);
    s += ";beta=" + format_double(params.beta);
    s += ";g=" + (params.g ? params.g->label : std::string("none"));
    return s;
}

PhysicalParams default_params(Model m) {
    PhysicalParams p;  // nu = kappa = 1/2, gamma = mu = 1, alpha 5/4, beta 1/2
    switch (m) {
        case Model::Classical3D:
            p.alpha = 1.0;
            p.beta = 1.0;
            break;
        case Model::Fractional3D:
        case Model::Fractional2D:
            break;
        case Model::LogNoAngular:
            p.alpha = 1.75;
            p.gamma = 0.0;
            p.g = g_by_label("g1");
            break;
        case Model::LogWithAngular:
            p.g = g_by_label("g1");
            break;
        case Model::NoGradDiv:
            p.gamma = 0.0;
            p.mu = 0.0;
            break;
    }
    return p;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace mps
