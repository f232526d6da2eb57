//! Python bindings: an `Algebra` class over a parsed presentation.

use anick_core::chains::enumerate_chains;
use anick_core::commutative::{comm_buchberger, comm_normal_form, comm_reduce_basis};
use anick_core::hilbert::{chains_for_hilbert, hilbert_from_chains, hilbert_from_normal_words};
use anick_core::noncommutative::{nc_buchberger, nc_reduce_basis, NcGB};
use anick_core::resolution::{
    build_resolution, is_minimal, render_word, tor_dimensions, verify_resolution, Resolution, VerifyOptions,
};
use anick_core::series::SeriesTrunc;
use anick_core::{make_bn, parse_presentation, AlgebraError, ParseError, Presentation, Relations};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn algebra_err(e: AlgebraError) -> PyErr {
    match e {
        AlgebraError::NotInKernel { .. }
        | AlgebraError::NoChainFactorization { .. }
        | AlgebraError::ResolutionInvariant(_)
        | AlgebraError::StaleObstruction => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_err(e: ParseError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn coefficients(s: &SeriesTrunc) -> PyResult<Vec<String>> {
    Ok(s.coeffs().iter().map(|c| c.to_string()).collect())
}

/// `(level, chain, target, coeff)`.
type WitnessTuple = (usize, String, String, String);

/// A finitely presented algebra over Q.
#[pyclass(frozen, module = "anick")]
struct Algebra {
    inner: Presentation,
}

impl Algebra {
    fn nc_basis(&self, max_degree: u32) -> PyResult<NcGB> {
        match &self.inner.relations {
            Relations::Noncommutative(rels) => Ok(nc_reduce_basis(
                &nc_buchberger(rels, &self.inner.order, max_degree).map_err(algebra_err)?,
            )),
            Relations::Commutative(_) => Err(PyValueError::new_err("needs a noncommutative presentation")),
        }
    }

    fn resolution(&self, max_level: usize, max_degree: u32) -> PyResult<Resolution> {
        build_resolution(&self.inner, max_level, max_degree).map_err(algebra_err)
    }
}

#[pymethods]
impl Algebra {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Algebra {
            inner: parse_presentation(text).map_err(parse_err)?,
        })
    }

    /// The built-in family B_n.
    #[staticmethod]
    fn bn(n: usize) -> PyResult<Self> {
        Ok(Algebra {
            inner: make_bn(n).map_err(algebra_err)?,
        })
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.names()
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    /// Reduced Groebner basis and the degree it is complete to (`None`
    /// for commutative input).
    #[pyo3(signature = (max_degree = 10))]
    fn groebner_basis(&self, max_degree: u32) -> PyResult<(Vec<String>, Option<u32>)> {
        let names = self.inner.names();
        match &self.inner.relations {
            Relations::Commutative(rels) => {
                let g = comm_reduce_basis(&comm_buchberger(rels, &self.inner.order).map_err(algebra_err)?);
                Ok((g.basis.iter().map(|f| f.display(&names).to_string()).collect(), None))
            }
            Relations::Noncommutative(_) => {
                let g = self.nc_basis(max_degree)?;
                let basis = g.basis().iter().map(|f| f.display(&names).to_string()).collect();
                Ok((basis, Some(g.complete_to_degree())))
            }
        }
    }

    #[pyo3(signature = (poly, max_degree = 10))]
    fn normal_form(&self, poly: &str, max_degree: u32) -> PyResult<String> {
        let names = self.inner.names();
        let ord = &self.inner.order;
        match &self.inner.relations {
            Relations::Commutative(rels) => {
                let g = comm_reduce_basis(&comm_buchberger(rels, ord).map_err(algebra_err)?);
                let f = self.inner.parse_comm_poly(poly).map_err(parse_err)?;
                Ok(comm_normal_form(&f, &g.basis, ord).display(&names).to_string())
            }
            Relations::Noncommutative(_) => {
                let g = self.nc_basis(max_degree)?;
                let f = self.inner.parse_nc_poly(poly).map_err(parse_err)?;
                g.certify(f.degree(ord).unwrap_or(0)).map_err(algebra_err)?;
                Ok(g.normal_form(&f).display(&names).to_string())
            }
        }
    }

    /// Chains at levels `0..=max_level`, as rendered words.
    #[pyo3(signature = (max_level = 3, max_degree = 10))]
    fn chains(&self, max_level: usize, max_degree: u32) -> PyResult<Vec<Vec<String>>> {
        let g = self.nc_basis(max_degree)?;
        let cs = enumerate_chains(&g.leading_words(), &self.inner.order, max_level, max_degree).map_err(algebra_err)?;
        let names = self.inner.names();
        Ok((0..=max_level as i32)
            .map(|n| cs.level(n).iter().map(|c| render_word(&c.word, &names)).collect())
            .collect())
    }

    /// Hilbert series coefficients from normal words and, for
    /// noncommutative input, from chains.
    #[pyo3(signature = (max_degree = 10))]
    fn hilbert_series(&self, max_degree: u32) -> PyResult<(Vec<String>, Option<Vec<String>>)> {
        match &self.inner.relations {
            Relations::Commutative(rels) => {
                let g = comm_reduce_basis(&comm_buchberger(rels, &self.inner.order).map_err(algebra_err)?);
                Ok((
                    coefficients(&hilbert_from_normal_words(&g, max_degree).map_err(algebra_err)?)?,
                    None,
                ))
            }
            Relations::Noncommutative(_) => {
                let g = self.nc_basis(max_degree)?;
                let direct = hilbert_from_normal_words(&g, max_degree).map_err(algebra_err)?;
                let cs = chains_for_hilbert(&g.leading_words(), &self.inner.order, max_degree).map_err(algebra_err)?;
                let via = hilbert_from_chains(&cs, max_degree).map_err(algebra_err)?;
                Ok((coefficients(&direct)?, Some(coefficients(&via)?)))
            }
        }
    }

    /// `d_level(chain ⊗ 1)` rendered as text.
    #[pyo3(signature = (level, chain, max_degree = 10))]
    fn differential(&self, level: usize, chain: &str, max_degree: u32) -> PyResult<String> {
        let res = self.resolution(level, max_degree)?;
        let w = self.inner.parse_nc_poly(chain).map_err(parse_err)?;
        let word = match w.terms() {
            [(word, c)] if *c == anick_core::algebra::int(1) => word.clone(),
            _ => return Err(PyValueError::new_err("chain must be a single word")),
        };
        res.differential(level, &word)
            .map(|d| d.display(res.names()))
            .ok_or_else(|| PyValueError::new_err(format!("{chain} is not a {level}-chain of degree <= {max_degree}")))
    }

    /// Runs every resolution check; returns whether all passed.
    #[pyo3(signature = (max_level = 3, max_degree = 10))]
    fn verify(&self, max_level: usize, max_degree: u32) -> PyResult<bool> {
        let res = self.resolution(max_level, max_degree)?;
        Ok(verify_resolution(&res, &VerifyOptions::default()).passed())
    }

    /// Total `dim Tor_i` for `i = 0..=max_index`; chain level `n` carries `Tor_{n+1}`.
    #[pyo3(signature = (max_index = 3, max_degree = 10))]
    fn tor(&self, max_index: usize, max_degree: u32) -> PyResult<Vec<u64>> {
        let table = tor_dimensions(&self.resolution(max_index, max_degree)?);
        Ok((0..=max_index)
            .map(|i| table.tor(i).map_or(0, |r| r.iter().sum()))
            .collect())
    }

    /// `(minimal, witness)`; the witness is `(level, chain, target, coeff)`.
    #[pyo3(signature = (max_level = 3, max_degree = 10))]
    fn is_minimal(&self, max_level: usize, max_degree: u32) -> PyResult<(bool, Option<WitnessTuple>)> {
        let res = self.resolution(max_level, max_degree)?;
        let names = self.inner.names();
        let m = is_minimal(&res);
        Ok((
            m.minimal,
            m.witness.map(|w| {
                (
                    w.level,
                    render_word(&w.chain, &names),
                    render_word(&w.target, &names),
                    w.coeff.to_string(),
                )
            }),
        ))
    }

    fn __repr__(&self) -> String {
        format!("Algebra(generators={:?})", self.inner.names())
    }
}

#[pymodule]
fn anick(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    Ok(())
}
