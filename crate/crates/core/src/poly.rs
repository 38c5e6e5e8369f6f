//! Integer-coefficient polynomials in one variable t, stored low degree
//! first. Coefficients are i128 so that Eulerian polynomials up to E_30
//! (coefficients near 30!) stay exact.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedIntPolynomial {
    coeffs: Vec<i128>,
}

impl GradedIntPolynomial {
    pub fn zero() -> Self {
        GradedIntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GradedIntPolynomial { coeffs: vec![1] }
    }

    pub fn from_coeffs(coeffs: Vec<i128>) -> Self {
        let mut p = GradedIntPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// p(t-1), computed by exact binomial expansion.
    pub fn compose_t_minus_1(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![0i128; n];
        for (j, &fj) in self.coeffs.iter().enumerate() {
            // (t-1)^j = sum_i C(j,i) (-1)^(j-i) t^i
            let mut binom = 1i128;
            for i in 0..=j {
                // binom = C(j,i) maintained incrementally
                let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                out[i] += fj * sign * binom;
                binom = binom * (j as i128 - i as i128) / (i as i128 + 1);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
    }

    /// "1 + 4t + t^2" style rendering.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 if c == 1 => "t".to_string(),
                1 => format!("{c}t"),
                _ if c == 1 => format!("t^{i}"),
                _ => format!("{c}t^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_h_from_f() {
        // f(t) = 6 + 6t + t^2 for the hexagon; h = f(t-1) = 1 + 4t + t^2
        let f = GradedIntPolynomial::from_coeffs(vec![6, 6, 1]);
        let h = f.compose_t_minus_1();
        assert_eq!(h.coeffs(), &[1, 4, 1]);
        assert!(h.is_palindromic());
        assert_eq!(h.eval(1), 6);
    }

    #[test]
    fn ring_ops() {
        let p = GradedIntPolynomial::from_coeffs(vec![1, 1]);
        let q = p.mul(&p);
        assert_eq!(q.coeffs(), &[1, 2, 1]);
        assert_eq!(p.add(&q).coeffs(), &[2, 3, 1]);
        assert_eq!(q.eval(2), 9);
        assert_eq!(p.scale(3).coeffs(), &[3, 3]);
        assert!(GradedIntPolynomial::from_coeffs(vec![0, 0]).is_zero());
    }

    #[test]
    fn display_format() {
        let h = GradedIntPolynomial::from_coeffs(vec![1, 9, 17, 9, 1]);
        assert_eq!(h.display(), "1 + 9t + 17t^2 + 9t^3 + t^4");
    }
}
