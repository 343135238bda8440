#include "psido/multiplier.hpp"

#include <algorithm>
#include <cmath>

namespace psido {

namespace {

ExprPtr number_node(cd v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Number;
    n->value = v;
    return n;
}

ExprPtr binary_node(char op, ExprPtr lhs, ExprPtr rhs) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

ExprPtr variable_node(const std::string& name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Variable;
    n->name = name;
    return n;
}

using ExprMatrix = std::vector<std::vector<ExprPtr>>;

ExprMatrix parse_matrix(const std::vector<std::vector<std::string>>& entries) {
    ExprMatrix m;
    for (const auto& row : entries) {
        m.emplace_back();
        for (const auto& s : row) m.back().push_back(parse_expression(s));
    }
    if (m.empty() || m[0].empty()) throw SymbolError("empty operator matrix");
    for (const auto& row : m)
        if (row.size() != m.size()) throw SymbolError("operator matrix must be square");
    return m;
}

// Integer offset of `deg` below `top` on a common degree ladder.
int ladder_offset(cd top, cd deg) {
    double d = std::real(top - deg);
    int m = static_cast<int>(std::lround(d));
    if (std::abs(top - deg - cd(double(m))) > kDegreeMergeTol || m < 0)
        throw SymbolError("component degrees do not align on one ladder");
    return m;
}

Operator build_multiplier(const std::string& name, const ExprMatrix& ast,
                          double cut, int depth) {
    const int dim = static_cast<int>(ast.size());
    for (const auto& row : ast)
        for (const auto& e : row)
            if (uses_variable(e, "x") || uses_variable(e, "xi"))
                throw SymbolError("multiplier expressions may only use n");

    Operator op;
    op.name = name;
    op.dim = dim;
    op.cut = cut;

    std::vector<std::vector<ScalarSeries>> sp(dim), sm(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            sp[i].push_back(eval_series(ast[i][j], SeriesEnv{+1, std::nullopt, true, false}));
            sm[i].push_back(eval_series(ast[i][j], SeriesEnv{-1, std::nullopt, true, false}));
        }
    op.tail_plus = MatSeries::from_scalar_entries(sp);
    op.tail_minus = MatSeries::from_scalar_entries(sm);

    cd top = std::real(op.tail_plus.degree()) >= std::real(op.tail_minus.degree())
                 ? op.tail_plus.degree()
                 : op.tail_minus.degree();
    int offp = ladder_offset(top, op.tail_plus.degree());
    int offm = ladder_offset(top, op.tail_minus.degree());
    op.order = top;

    Symbol sym(top, 0, depth, 1, dim);
    for (int j = 0; j < depth; ++j) {
        Mat cp = j - offp >= 0 ? op.tail_plus.coeff(j - offp) : Mat(Mat::Zero(dim, dim));
        Mat cm = j - offm >= 0 ? op.tail_minus.coeff(j - offm) : Mat(Mat::Zero(dim, dim));
        sym.comp(j) = Component(PMF(cp), PMF(cm));
    }

    op.mode_map = [ast, dim](double n) {
        Mat v(dim, dim);
        NumericEnv env;
        env.n = cd(n);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) v(i, j) = eval_numeric(ast[i][j], env);
        return v;
    };
    sym.set_exact([map = op.mode_map](double, double xi) { return map(xi); }, true);
    op.symbol = std::move(sym);
    check_admissible(op, cut);
    return op;
}

void gather_args(const Mat& M, std::vector<cd>& eigs) {
    Eigen::ComplexEigenSolver<Mat> es(M, false);
    for (int i = 0; i < M.rows(); ++i) eigs.push_back(es.eigenvalues()(i));
}

std::vector<cd> spectrum_sample(const Operator& a, int modes) {
    std::vector<cd> eigs;
    if (a.is_multiplier()) {
        for (int n = -modes; n <= modes; ++n) gather_args(a.mode(double(n)), eigs);
        if (a.tail_plus.len() > 0) gather_args(a.tail_plus.coeff(0), eigs);
        if (a.tail_minus.len() > 0) gather_args(a.tail_minus.coeff(0), eigs);
    } else {
        for (int k = 0; k < a.symbol.grid(); ++k) {
            gather_args(a.symbol.comp(0).plus.at(k), eigs);
            gather_args(a.symbol.comp(0).minus.at(k), eigs);
        }
    }
    return eigs;
}

double wrap_pi(double t) {
    while (t <= -PI) t += 2 * PI;
    while (t > PI) t -= 2 * PI;
    return t;
}

}  // namespace

Operator make_matrix_multiplier(const std::string& name,
                                const std::vector<std::vector<std::string>>& entries,
                                double cut, int depth) {
    return build_multiplier(name, parse_matrix(entries), cut, depth);
}

Operator make_power_multiplier(const std::string& name, const std::string& base,
                               cd exponent, double cut, int depth) {
    ExprPtr b = parse_expression("(" + base + ")");
    ExprMatrix ast{{binary_node('^', b, number_node(exponent))}};
    return build_multiplier(name, ast, cut, depth);
}

Operator make_shifted_first_order(const std::string& name, cd c, double cut, int depth) {
    ExprMatrix ast{{binary_node('+', variable_node("n"), number_node(c))}};
    return build_multiplier(name, ast, cut, depth);
}

Operator make_variable_symbol(const std::string& name,
                              const std::vector<std::vector<std::string>>& entries,
                              double cut, int grid, int depth) {
    ExprMatrix ast = parse_matrix(entries);
    const int dim = static_cast<int>(ast.size());
    for (const auto& row : ast)
        for (const auto& e : row)
            if (uses_variable(e, "n"))
                throw SymbolError("variable symbols use x and xi, not n");

    // Series at every gridpoint, both signs of xi.
    std::vector<std::vector<std::vector<ScalarSeries>>> sp(grid), sm(grid);
    cd top = 0;
    bool first = true;
    for (int k = 0; k < grid; ++k) {
        double xk = 2.0 * PI * k / grid;
        sp[k].resize(dim);
        sm[k].resize(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                SeriesEnv ep{+1, cd(xk), false, true};
                SeriesEnv em{-1, cd(xk), false, true};
                sp[k][i].push_back(eval_series(ast[i][j], ep));
                sm[k][i].push_back(eval_series(ast[i][j], em));
            }
        for (const auto* block : {&sp[k], &sm[k]})
            for (const auto& row : *block)
                for (const auto& s : row) {
                    if (s.is_zero()) continue;
                    if (first || std::real(s.degree()) > std::real(top)) top = s.degree();
                    first = false;
                }
    }
    if (first) throw SymbolError("zero symbol");

    Symbol sym(top, 0, depth, grid, dim);
    for (int j = 0; j < depth; ++j) {
        PMF vp(grid, dim), vm(grid, dim);
        for (int k = 0; k < grid; ++k)
            for (int i = 0; i < dim; ++i)
                for (int l = 0; l < dim; ++l) {
                    const ScalarSeries& a = sp[k][i][l];
                    const ScalarSeries& b = sm[k][i][l];
                    vp.at(k)(i, l) = a.is_zero() ? cd(0) : a.coeff(j - ladder_offset(top, a.degree()));
                    vm.at(k)(i, l) = b.is_zero() ? cd(0) : b.coeff(j - ladder_offset(top, b.degree()));
                }
        sym.comp(j) = Component(std::move(vp), std::move(vm));
    }
    sym.set_exact(
        [ast, dim](double x, double xi) {
            Mat v(dim, dim);
            NumericEnv env;
            env.x = cd(x);
            env.xi = cd(xi);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) v(i, j) = eval_numeric(ast[i][j], env);
            return v;
        },
        false);

    Operator op;
    op.name = name;
    op.dim = dim;
    op.cut = cut;
    op.order = top;
    op.symbol = std::move(sym);
    check_admissible(op, cut);
    return op;
}

Operator operator_product(const Operator& a, const Operator& b, double cut) {
    if (!a.is_multiplier() || !b.is_multiplier())
        throw SymbolError("operator_product requires Fourier multipliers");
    if (a.dim != b.dim) throw SymbolError("dimension mismatch");
    Operator op;
    op.name = a.name + "*" + b.name;
    op.dim = a.dim;
    op.cut = cut;
    op.order = a.order + b.order;
    op.mode_map = [ma = a.mode_map, mb = b.mode_map](double n) -> Mat {
        return ma(n) * mb(n);
    };
    op.tail_plus = a.tail_plus * b.tail_plus;
    op.tail_minus = a.tail_minus * b.tail_minus;
    op.symbol = star_product(a.symbol, b.symbol);
    op.symbol.set_exact([map = op.mode_map](double, double xi) { return map(xi); }, true);
    check_admissible(op, cut);
    return op;
}

Operator operator_product_auto(const Operator& a, const Operator& b) {
    Operator probe;
    probe.name = a.name + "*" + b.name;
    probe.dim = a.dim;
    probe.mode_map = [ma = a.mode_map, mb = b.mode_map](double n) -> Mat {
        return ma(n) * mb(n);
    };
    probe.tail_plus = a.tail_plus * b.tail_plus;
    probe.tail_minus = a.tail_minus * b.tail_minus;
    return operator_product(a, b, auto_cut(probe));
}

Operator operator_power(const Operator& a, int k, double cut) {
    if (k < 1) throw SymbolError("operator_power needs k >= 1");
    Operator op = a;
    for (int i = 1; i < k; ++i) op = operator_product(op, a, cut);
    op.name = a.name + "^" + std::to_string(k);
    op.cut = cut;
    check_admissible(op, cut);
    return op;
}

Operator perturb_family(const Operator& a, const Operator& s, double t) {
    if (!a.is_multiplier() || !s.is_multiplier())
        throw SymbolError("perturb_family requires Fourier multipliers");
    Operator op;
    op.name = a.name + "(1+t*" + s.name + ")";
    op.dim = a.dim;
    op.cut = a.cut;
    op.order = a.order;
    const int dim = a.dim;
    op.mode_map = [ma = a.mode_map, ms = s.mode_map, t, dim](double n) -> Mat {
        return ma(n) * (Mat::Identity(dim, dim) + t * ms(n));
    };
    MatSeries one = MatSeries::identity(dim);
    op.tail_plus = a.tail_plus * (one + s.tail_plus.scaled(t));
    op.tail_minus = a.tail_minus * (one + s.tail_minus.scaled(t));
    op.symbol = star_product(a.symbol,
                             Symbol::identity(1, dim, a.symbol.depth()) + t * s.symbol);
    op.symbol.set_exact([map = op.mode_map](double, double xi) { return map(xi); }, true);
    check_admissible(op, op.cut);
    return op;
}

double check_admissible(const Operator& a, double theta, int modes) {
    double min_gap = 4 * PI;
    cd worst = 0;
    for (cd lam : spectrum_sample(a, modes)) {
        if (std::abs(lam) < 1e-10)
            throw AdmissibilityError(a.name + ": eigenvalue at the origin");
        double d = std::abs(wrap_pi(std::arg(lam) - theta));
        if (d < min_gap) {
            min_gap = d;
            worst = lam;
        }
    }
    double deg = min_gap * 180.0 / PI;
    if (deg < 2.0)
        throw AdmissibilityError(a.name + ": eigenvalue " + std::to_string(std::real(worst)) +
                                 (std::imag(worst) < 0 ? "-" : "+") +
                                 std::to_string(std::abs(std::imag(worst))) +
                                 "i within 2 deg of the cut ray");
    return deg;
}

double cut_from_args(std::vector<double> args, const std::string& name) {
    if (args.empty()) throw AdmissibilityError(name + ": empty spectrum sample");
    std::sort(args.begin(), args.end());
    double best_gap = 2 * PI - (args.back() - args.front());
    double cut = wrap_pi(args.back() + best_gap / 2);
    for (size_t i = 1; i < args.size(); ++i) {
        double gap = args[i] - args[i - 1];
        if (gap > best_gap) {
            best_gap = gap;
            cut = args[i - 1] + gap / 2;
        }
    }
    if (best_gap < 4.0 * PI / 180.0)
        throw AdmissibilityError(name + ": no eigenvalue-free cone of width >= 4 deg");
    return cut;
}

double auto_cut(const Operator& a, int modes) {
    std::vector<double> args;
    for (cd lam : spectrum_sample(a, modes))
        if (std::abs(lam) >= 1e-10) args.push_back(std::arg(lam));
    return cut_from_args(std::move(args), a.name);
}

}  // namespace psido
