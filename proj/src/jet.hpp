#pragma once

// Multivariate truncated Taylor polynomials. A jet over D variables with box
// degrees (a_1..a_D) keeps the coefficients of t^m for every multi-index
// m <= a componentwise; products drop all terms outside the box.

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

namespace ccnorm {

class JetShape {
public:
    explicit JetShape(std::vector<int> degrees) : degrees_(std::move(degrees))
    {
        strides_.resize(degrees_.size());
        std::size_t s = 1;
        for (std::size_t v = 0; v < degrees_.size(); ++v) {
            strides_[v] = s;
            s *= static_cast<std::size_t>(degrees_[v] + 1);
        }
        size_ = s;
        for (int d : degrees_)
            total_degree_ += d;

        index_.resize(size_ * degrees_.size());
        for (std::size_t f = 0; f < size_; ++f)
            for (std::size_t v = 0; v < degrees_.size(); ++v)
                index_[f * degrees_.size() + v] = static_cast<int>((f / strides_[v]) % (degrees_[v] + 1));
    }

    std::size_t size() const noexcept { return size_; }
    std::size_t vars() const noexcept { return degrees_.size(); }
    int total_degree() const noexcept { return total_degree_; }
    int degree(std::size_t v) const noexcept { return degrees_[v]; }
    std::size_t stride(std::size_t v) const noexcept { return strides_[v]; }
    int exponent(std::size_t flat, std::size_t v) const noexcept { return index_[flat * degrees_.size() + v]; }

    /// Flat index of i + j, or size() if it falls outside the box.
    std::size_t add(std::size_t i, std::size_t j) const noexcept
    {
        std::size_t out = 0;
        for (std::size_t v = 0; v < degrees_.size(); ++v) {
            const int e = exponent(i, v) + exponent(j, v);
            if (e > degrees_[v])
                return size_;
            out += static_cast<std::size_t>(e) * strides_[v];
        }
        return out;
    }

private:
    std::vector<int> degrees_;
    std::vector<std::size_t> strides_;
    std::vector<int> index_;
    std::size_t size_ = 1;
    int total_degree_ = 0;
};

template <typename T>
class Jet {
public:
    Jet(std::shared_ptr<const JetShape> shape, const T& zero)
        : shape_(std::move(shape)), c_(shape_->size(), zero)
    {
    }

    static Jet constant(std::shared_ptr<const JetShape> shape, const T& value)
    {
        Jet j(shape, value * 0.0);
        j.c_[0] = value;
        return j;
    }

    /// value + t_v.
    static Jet variable(std::shared_ptr<const JetShape> shape, const T& value, std::size_t v)
    {
        Jet j = constant(shape, value);
        if (shape->degree(v) > 0)
            j.c_[shape->stride(v)] = value * 0.0 + 1.0;
        return j;
    }

    const JetShape& shape() const noexcept { return *shape_; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    T& operator[](std::size_t i) { return c_[i]; }
    const T& value() const { return c_[0]; }
    /// Coefficient of the top corner t^a of the box.
    const T& top() const { return c_.back(); }

    Jet& operator+=(const Jet& o)
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator*=(const T& s)
    {
        for (auto& x : c_)
            x *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const T& s) { return a *= s; }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        const JetShape& sh = *a.shape_;
        const T zero = a.c_[0] * 0.0;
        Jet out(a.shape_, zero);
        for (std::size_t i = 0; i < sh.size(); ++i) {
            if (a.c_[i] == zero)
                continue;
            for (std::size_t j = 0; j < sh.size(); ++j) {
                const std::size_t k = sh.add(i, j);
                if (k < sh.size())
                    out.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        return out;
    }

    /// 1 / (c0 + n) = (1/c0) sum_m (-n/c0)^m; n is nilpotent past total degree.
    friend Jet reciprocal(const Jet& a)
    {
        const T inv = (a.c_[0] * 0.0 + 1.0) / a.c_[0];
        Jet ratio = a * (-inv);
        ratio.c_[0] = inv * 0.0;
        return series(ratio, [&](int) { return inv; });
    }

    /// exp(c0 + n) = e^{c0} sum_m n^m / m!.
    friend Jet exp(const Jet& a)
    {
        using std::exp;
        const T base = exp(a.c_[0]);
        Jet n = a;
        n.c_[0] = base * 0.0;
        T fact = base * 0.0 + 1.0;
        return series(n, [&](int m) {
            if (m > 0)
                fact *= static_cast<double>(m);
            return base / fact;
        });
    }

private:
    // sum_m coef(m) n^m for nilpotent n, m = 0..total degree.
    template <typename Coef>
    static Jet series(const Jet& n, Coef coef)
    {
        Jet power = constant(n.shape_, n.c_[0] * 0.0 + 1.0);
        Jet out = constant(n.shape_, coef(0));
        for (int m = 1; m <= n.shape_->total_degree(); ++m) {
            power = power * n;
            out += power * coef(m);
        }
        return out;
    }

    std::shared_ptr<const JetShape> shape_;
    std::vector<T> c_;
};

} // namespace ccnorm
