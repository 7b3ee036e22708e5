//! Affine maps `z -> A(z) + b` compiled to work directly on element indices,
//! for sweeps over whole fields.

use crate::gf::FieldElement;
use crate::linpoly::LinearizedPoly;

enum Kernel {
    /// p = 2: `tables[c][byte]` is the XOR of the images of the set bits of
    /// byte `c` of the index.
    Binary { tables: Vec<[u64; 256]> },
    /// Odd p: images of the F_p basis vectors as digit vectors.
    Digits { p: u64, images: Vec<Vec<u64>> },
}

pub struct CompiledMap {
    order: u64,
    shift: u64,
    kernel: Kernel,
}

impl CompiledMap {
    pub fn new(linear: &LinearizedPoly, shift: &FieldElement) -> Self {
        let field = linear.field();
        let p = field.p() as u64;
        let digits = (field.m() * field.n()) as usize;
        let images: Vec<u64> = (0..digits)
            .map(|k| {
                let e = field.element(p.pow(k as u32)).expect("in range");
                linear.eval(&e).expect("same field").index()
            })
            .collect();
        let kernel = if p == 2 {
            let tables = images
                .chunks(8)
                .map(|chunk| {
                    let mut t = [0u64; 256];
                    for (byte, slot) in t.iter_mut().enumerate() {
                        *slot = chunk
                            .iter()
                            .enumerate()
                            .filter(|(bit, _)| byte >> bit & 1 == 1)
                            .fold(0, |acc, (_, img)| acc ^ img);
                    }
                    t
                })
                .collect();
            Kernel::Binary { tables }
        } else {
            let images = images.iter().map(|&i| to_digits(i, p, digits)).collect();
            Kernel::Digits { p, images }
        };
        Self {
            order: field.order(),
            shift: shift.index(),
            kernel,
        }
    }

    pub fn linear(linear: &LinearizedPoly) -> Self {
        Self::new(linear, &linear.field().zero())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Image of the element with index `idx` (which must be below the order).
    pub fn apply(&self, idx: u64) -> u64 {
        match &self.kernel {
            Kernel::Binary { tables } => {
                let mut acc = self.shift;
                for (c, table) in tables.iter().enumerate() {
                    acc ^= table[(idx >> (8 * c) & 0xff) as usize];
                }
                acc
            }
            Kernel::Digits { p, images } => {
                let n = images.len();
                let mut acc = to_digits(self.shift, *p, n);
                let mut rest = idx;
                for img in images {
                    let d = rest % p;
                    rest /= p;
                    if d != 0 {
                        for (a, v) in acc.iter_mut().zip(img) {
                            *a = (*a + d * v) % p;
                        }
                    }
                }
                acc.iter().rev().fold(0, |acc, &d| acc * p + d)
            }
        }
    }

    /// The whole table `i -> f(i)`.
    pub fn table(&self) -> Vec<u64> {
        (0..self.order).map(|i| self.apply(i)).collect()
    }
}

fn to_digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}
