use super::scalar::{PrimeField, ScalarField};

const TABLE_LIMIT: u32 = 1 << 16;

/// F_q = F_p[y]/(g) with elements packed as their index `Σ c_i p^i`.
///
/// For q ≤ 2^16 multiplication goes through log/exp tables; larger base
/// fields multiply digit vectors directly.
#[derive(Debug, Clone)]
pub struct BaseField {
    prime: PrimeField,
    m: u32,
    q: u32,
    /// monic, degree m, low-degree-first
    g: Vec<u32>,
    tables: Option<LogTables>,
}

#[derive(Debug, Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl BaseField {
    /// `g` must be monic irreducible of degree `m` over F_p; callers validate.
    pub(crate) fn new(p: u32, m: u32, g: Vec<u32>) -> Self {
        let q = p.pow(m);
        let mut field = Self {
            prime: PrimeField::new(p),
            m,
            q,
            g,
            tables: None,
        };
        if q <= TABLE_LIMIT && q > 2 {
            field.tables = Some(field.build_tables());
        }
        field
    }

    pub fn p(&self) -> u32 {
        self.prime.p()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.g
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.prime
    }

    fn digits(&self, mut a: u32) -> [u32; 32] {
        let p = self.p();
        let mut out = [0u32; 32];
        for d in out.iter_mut().take(self.m as usize) {
            *d = a % p;
            a /= p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        let p = self.p();
        digits
            .iter()
            .take(self.m as usize)
            .rev()
            .fold(0u32, |acc, &d| acc * p + d)
    }

    fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return self.prime.mul(&a, &b);
        }
        let p = self.p() as u64;
        let m = self.m as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 64];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &gi) in self.g[..m].iter().enumerate() {
                prod[d - m + i] = (prod[d - m + i] + (p - c) * gi as u64) % p;
            }
            prod[d] = 0;
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.pack(&digits)
    }

    fn build_tables(&self) -> LogTables {
        let q = self.q;
        for candidate in 2..q {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.mul_schoolbook(x, candidate);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return LogTables { exp, log };
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let group = self.q as u64 - 1;
        let mut order = group;
        for r in super::poly::prime_factors(group) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        Some(order)
    }
}

impl ScalarField for BaseField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.p() == 2 {
            a ^ b
        } else if self.m == 1 {
            self.prime.add(a, b)
        } else {
            let da = self.digits(*a);
            let db = self.digits(*b);
            let sum: Vec<u32> = (0..self.m as usize)
                .map(|i| self.prime.add(&da[i], &db[i]))
                .collect();
            self.pack(&sum)
        }
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &u32) -> u32 {
        if self.p() == 2 {
            *a
        } else if self.m == 1 {
            self.prime.neg(a)
        } else {
            let da = self.digits(*a);
            let neg: Vec<u32> = (0..self.m as usize)
                .map(|i| self.prime.neg(&da[i]))
                .collect();
            self.pack(&neg)
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[*a as usize] as u64 + t.log[*b as usize] as u64;
                t.exp[(s % (self.q as u64 - 1)) as usize]
            }
            None => self.mul_schoolbook(*a, *b),
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let l = t.log[*a as usize];
                t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
            }
            None => self.pow(*a, self.q as u64 - 2),
        })
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}
