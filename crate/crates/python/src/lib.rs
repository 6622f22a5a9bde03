//! Python bindings: finite fields, matrices, unit schemes, block and
//! convolutional codes, Fourier and group-ring constructions.
//!
//! Build: `cargo build -p unit-codes-py --release`, then import the
//! produced cdylib as `unit_codes` (see python/smoke_test.py).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use unit_codes_core::block::{self, BlockCode, CodeReport, DEFAULT_DISTANCE_CAP};
use unit_codes_core::conv::{self, ConvCode, Twist};
use unit_codes_core::field::FieldSpec;
use unit_codes_core::fourier::FourierScheme;
use unit_codes_core::grouprings::{self, GirthRequirement, GroupRingElem};
use unit_codes_core::named;
use unit_codes_core::sampling::Rng;
use unit_codes_core::scheme::{complete_to_unit, SchemeSplit, UnitScheme};
use unit_codes_core::Mat;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// GF(p^m) with the canonical modulus encoding.
#[pyclass(name = "Field", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    spec: FieldSpec,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        Ok(PyField {
            spec: FieldSpec::parse_literal(literal).map_err(value_err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.spec.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.spec.m()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.spec.q()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.spec.add(a, b))
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.spec.sub(a, b))
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.spec.mul(a, b))
    }

    fn div(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(a)?;
        self.check(b)?;
        self.spec.div(a, b).map_err(value_err)
    }

    fn neg(&self, a: u64) -> PyResult<u64> {
        self.check(a)?;
        Ok(self.spec.neg(a))
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        self.check(a)?;
        self.spec.inv(a).map_err(value_err)
    }

    fn pow(&self, a: u64, e: u64) -> PyResult<u64> {
        self.check(a)?;
        Ok(self.spec.pow(a, e))
    }

    fn element_of_order(&self, n: u64) -> PyResult<u64> {
        self.spec.element_of_order(n).map_err(value_err)
    }

    fn sqrt_minus_one(&self) -> Option<u64> {
        self.spec.sqrt_minus_one()
    }

    fn __repr__(&self) -> String {
        self.spec.to_string()
    }
}

impl PyField {
    fn check(&self, rep: u64) -> PyResult<()> {
        self.spec.check_rep(rep).map_err(value_err)
    }
}

/// Dense matrix over a finite field.
#[pyclass(name = "Matrix", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    mat: Mat,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(field: &PyField, rows: Vec<Vec<u64>>) -> PyResult<Self> {
        Ok(PyMatrix {
            mat: Mat::from_rows(field.spec.clone(), rows).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn identity(field: &PyField, n: usize) -> Self {
        PyMatrix {
            mat: Mat::identity(field.spec.clone(), n),
        }
    }

    #[getter]
    fn rows(&self) -> usize {
        self.mat.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.mat.cols()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            spec: self.mat.spec().clone(),
        }
    }

    fn row(&self, i: usize) -> PyResult<Vec<u64>> {
        if i >= self.mat.rows() {
            return Err(value_err("row out of range"));
        }
        Ok(self.mat.row(i).to_vec())
    }

    fn get(&self, r: usize, c: usize) -> PyResult<u64> {
        if r >= self.mat.rows() || c >= self.mat.cols() {
            return Err(value_err("index out of range"));
        }
        Ok(self.mat.get(r, c))
    }

    fn mul(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            mat: self.mat.mul(&other.mat).map_err(value_err)?,
        })
    }

    fn add(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            mat: self.mat.add(&other.mat).map_err(value_err)?,
        })
    }

    fn scalar_mul(&self, s: u64) -> PyMatrix {
        PyMatrix {
            mat: self.mat.scalar_mul(s),
        }
    }

    fn transpose(&self) -> PyMatrix {
        PyMatrix {
            mat: self.mat.transpose(),
        }
    }

    fn rank(&self) -> usize {
        self.mat.rank()
    }

    fn inverse(&self) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            mat: self.mat.inverse().map_err(value_err)?,
        })
    }

    /// The scalar alpha with M M^T = alpha I, or None.
    fn orthogonal_scalar(&self) -> Option<u64> {
        self.mat.orthogonal_scalar()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.mat).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            mat: serde_json::from_str(text).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Matrix({}x{} over {})",
            self.mat.rows(),
            self.mat.cols(),
            self.mat.spec()
        )
    }
}

fn report_to_dict<'py>(py: Python<'py>, report: &CodeReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", report.n)?;
    d.set_item("k", report.k)?;
    d.set_item("d", report.d)?;
    let flags = PyDict::new(py);
    flags.set_item("lcd", report.flags.lcd)?;
    flags.set_item("dc", report.flags.dc)?;
    flags.set_item("self_dual", report.flags.self_dual)?;
    flags.set_item("mds", report.flags.mds)?;
    d.set_item("flags", flags)?;
    d.set_item("intersection_dim", report.intersection_dim)?;
    d.set_item("css", report.css.map(|c| c.to_vec()))?;
    Ok(d)
}

/// An [n, k] linear block code (generator plus control matrix).
#[pyclass(name = "BlockCode", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBlockCode {
    code: BlockCode,
}

#[pymethods]
impl PyBlockCode {
    #[staticmethod]
    fn from_generator(generator: &PyMatrix) -> PyResult<Self> {
        Ok(PyBlockCode {
            code: BlockCode::from_generator(generator.mat.clone()).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.dim()
    }

    #[getter]
    fn generator(&self) -> PyMatrix {
        PyMatrix {
            mat: self.code.generator().clone(),
        }
    }

    #[getter]
    fn control(&self) -> PyMatrix {
        PyMatrix {
            mat: self.code.control().clone(),
        }
    }

    fn dual(&self) -> PyBlockCode {
        PyBlockCode {
            code: self.code.dual(),
        }
    }

    #[pyo3(signature = (cap=None))]
    fn min_distance(&self, cap: Option<u64>) -> PyResult<u32> {
        self.code
            .min_distance(cap.unwrap_or(DEFAULT_DISTANCE_CAP))
            .map_err(value_err)
    }

    #[pyo3(signature = (cap=None))]
    fn classify<'py>(&self, py: Python<'py>, cap: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
        let report = self.code.classify(cap.unwrap_or(DEFAULT_DISTANCE_CAP));
        report_to_dict(py, &report)
    }

    #[pyo3(signature = (cap=None))]
    fn css_parameters(&self, cap: Option<u64>) -> PyResult<[u64; 3]> {
        block::css_parameters(&self.code, cap.unwrap_or(DEFAULT_DISTANCE_CAP)).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("BlockCode([{}, {}])", self.code.n(), self.code.dim())
    }
}

/// A validated unit scheme U V = alpha I.
#[pyclass(name = "UnitScheme", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScheme {
    scheme: UnitScheme,
}

#[pymethods]
impl PyScheme {
    #[staticmethod]
    fn from_unit(u: &PyMatrix) -> PyResult<Self> {
        Ok(PyScheme {
            scheme: UnitScheme::from_unit(u.mat.clone()).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_pair(u: &PyMatrix, v: &PyMatrix) -> PyResult<Self> {
        Ok(PyScheme {
            scheme: UnitScheme::from_pair(u.mat.clone(), v.mat.clone()).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.scheme.n()
    }

    #[getter]
    fn alpha(&self) -> u64 {
        self.scheme.alpha()
    }

    #[getter]
    fn u(&self) -> PyMatrix {
        PyMatrix {
            mat: self.scheme.u().clone(),
        }
    }

    #[getter]
    fn v(&self) -> PyMatrix {
        PyMatrix {
            mat: self.scheme.v().clone(),
        }
    }

    fn derive(&self, rows: Vec<usize>) -> PyResult<PyBlockCode> {
        Ok(PyBlockCode {
            code: self.scheme.derive(&rows).map_err(value_err)?,
        })
    }

    /// Split into consecutive row blocks of the given sizes.
    fn split(&self, sizes: Vec<usize>) -> PyResult<PySplit> {
        Ok(PySplit {
            split: self.scheme.split_consecutive(&sizes).map_err(value_err)?,
        })
    }

    /// Split into explicit index blocks.
    fn split_blocks(&self, blocks: Vec<Vec<usize>>) -> PyResult<PySplit> {
        Ok(PySplit {
            split: self.scheme.split(blocks).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("UnitScheme(n={}, alpha={})", self.scheme.n(), self.scheme.alpha())
    }
}

fn parse_twist(twist: &str) -> PyResult<Twist> {
    match twist {
        "plain" => Ok(Twist::Plain),
        "i" => Ok(Twist::SqrtMinusOne),
        other => Err(value_err(format!("twist must be \"plain\" or \"i\", got {other:?}"))),
    }
}

/// A row partition of a unit scheme.
#[pyclass(name = "SchemeSplit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySplit {
    split: SchemeSplit,
}

#[pymethods]
impl PySplit {
    #[getter]
    fn block_sizes(&self) -> Vec<usize> {
        self.split.block_sizes()
    }

    #[pyo3(signature = (twist="plain"))]
    fn memory1(&self, twist: &str) -> PyResult<PyConv> {
        let t = parse_twist(twist)?;
        let sizes = self.split.block_sizes();
        let code = if sizes.len() == 2 && sizes[0] == sizes[1] {
            conv::build_memory1_equal(&self.split, t)
        } else {
            conv::build_memory1_unequal(&self.split, t)
        };
        Ok(PyConv {
            code: code.map_err(value_err)?,
        })
    }

    #[pyo3(signature = (twist="plain"))]
    fn memory3(&self, twist: &str) -> PyResult<PyConv> {
        Ok(PyConv {
            code: conv::build_memory3(&self.split, parse_twist(twist)?).map_err(value_err)?,
        })
    }

    fn three_block(&self) -> PyResult<PyConv> {
        Ok(PyConv {
            code: conv::build_memory2_three_blocks(&self.split).map_err(value_err)?,
        })
    }

    /// pattern: "rate34-mem1" or "rate34-mem3"
    fn mixed(&self, pattern: &str) -> PyResult<PyConv> {
        let p = match pattern {
            "rate34-mem1" => conv::MixedPattern::Rate34Mem1,
            "rate34-mem3" => conv::MixedPattern::Rate34Mem3,
            other => return Err(value_err(format!("unknown pattern {other:?}"))),
        };
        Ok(PyConv {
            code: conv::mixed_rate_builder(&self.split, p).map_err(value_err)?,
        })
    }
}

/// A convolutional code with its control matrix and right inverse.
#[pyclass(name = "ConvCode", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyConv {
    code: ConvCode,
}

#[pymethods]
impl PyConv {
    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    #[getter]
    fn delta(&self) -> usize {
        self.code.delta()
    }

    #[getter]
    fn memory(&self) -> usize {
        self.code.memory()
    }

    #[getter]
    fn gsb(&self) -> u64 {
        self.code.gsb()
    }

    fn is_noncatastrophic(&self) -> bool {
        self.code.is_noncatastrophic()
    }

    /// Returns (value, settled, depth_reached).
    #[pyo3(signature = (max_depth=None, cap=None))]
    fn free_distance(&self, max_depth: Option<usize>, cap: Option<u64>) -> PyResult<(u32, bool, usize)> {
        let fd = conv::free_distance(
            &self.code,
            max_depth,
            cap.unwrap_or(conv::DEFAULT_FREE_DISTANCE_CAP),
        )
        .map_err(value_err)?;
        Ok((fd.value, fd.settled, fd.depth_reached))
    }

    /// Minimum codeword weight over informations of degree <= depth.
    #[pyo3(signature = (depth, cap=None))]
    fn weight_at_depth(&self, depth: usize, cap: Option<u64>) -> PyResult<u32> {
        conv::weight_at_depth(&self.code, depth, cap.unwrap_or(conv::DEFAULT_FREE_DISTANCE_CAP))
            .map_err(value_err)
    }

    #[pyo3(signature = (support, depth, cap=None))]
    fn support_profile(&self, support: usize, depth: usize, cap: Option<u64>) -> PyResult<u32> {
        conv::support_distance_profile(
            &self.code,
            support,
            depth,
            cap.unwrap_or(conv::DEFAULT_FREE_DISTANCE_CAP),
        )
        .map_err(value_err)
    }

    /// "self_dual", "dc", "lcd" or "none".
    fn classify(&self) -> PyResult<String> {
        Ok(conv::conv_classify(&self.code).map_err(value_err)?.to_string())
    }

    fn dual(&self) -> PyResult<PyConv> {
        Ok(PyConv {
            code: self.code.dual_code().map_err(value_err)?,
        })
    }

    fn generator_json(&self) -> PyResult<String> {
        serde_json::to_string(self.code.generator()).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "ConvCode(({},{},{};{}))",
            self.code.n(),
            self.code.k(),
            self.code.delta(),
            self.code.memory()
        )
    }
}

/// A Fourier scheme F_n V = n I over a fixed field.
#[pyclass(name = "FourierScheme", frozen)]
struct PyFourier {
    fs: FourierScheme,
}

#[pymethods]
impl PyFourier {
    #[new]
    fn new(n: usize, field: &PyField) -> PyResult<Self> {
        Ok(PyFourier {
            fs: FourierScheme::new(n, field.spec.clone()).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.fs.n()
    }

    #[getter]
    fn omega(&self) -> u64 {
        self.fs.omega()
    }

    fn scheme(&self) -> PyScheme {
        PyScheme {
            scheme: self.fs.scheme().clone(),
        }
    }

    fn mds_window(&self, start: usize, r: usize, step: usize) -> PyResult<PyBlockCode> {
        Ok(PyBlockCode {
            code: self.fs.mds_window_code(start, r, step).map_err(value_err)?,
        })
    }

    fn lcd_arrangement(&self, r: usize) -> PyResult<(PyBlockCode, PySplit)> {
        let (code, split) = self.fs.lcd_arrangement(r).map_err(value_err)?;
        Ok((PyBlockCode { code }, PySplit { split }))
    }

    fn conjugate_paired_arrangement(&self, r: usize) -> PyResult<(PyBlockCode, PySplit)> {
        let (code, split) = self.fs.conjugate_paired_arrangement(r).map_err(value_err)?;
        Ok((PyBlockCode { code }, PySplit { split }))
    }
}

/// An element of Z_2(C_n x C_4).
#[pyclass(name = "GroupRingElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroupRing {
    elem: GroupRingElem,
}

#[pymethods]
impl PyGroupRing {
    #[new]
    #[pyo3(signature = (literal, n=None))]
    fn new(literal: &str, n: Option<usize>) -> PyResult<Self> {
        Ok(PyGroupRing {
            elem: GroupRingElem::parse(literal, n).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.elem.n()
    }

    #[getter]
    fn support(&self) -> usize {
        self.elem.support()
    }

    fn mul(&self, other: &PyGroupRing) -> PyResult<PyGroupRing> {
        Ok(PyGroupRing {
            elem: self.elem.mul(&other.elem).map_err(value_err)?,
        })
    }

    fn add(&self, other: &PyGroupRing) -> PyResult<PyGroupRing> {
        Ok(PyGroupRing {
            elem: self.elem.add(&other.elem).map_err(value_err)?,
        })
    }

    fn to_matrix(&self) -> PyMatrix {
        PyMatrix {
            mat: self.elem.to_matrix(),
        }
    }

    fn inverse(&self) -> Option<PyGroupRing> {
        self.elem.inverse().map(|elem| PyGroupRing { elem })
    }

    /// Derive an LDPC block code; girth None, 4 (no four-cycles) or
    /// 6 (no four- or six-cycles). Returns (code, four_cycles).
    #[pyo3(signature = (rows, girth=None))]
    fn ldpc_derive(&self, rows: Vec<usize>, girth: Option<u32>) -> PyResult<(PyBlockCode, u64)> {
        let req = match girth {
            None => GirthRequirement::None,
            Some(4) => GirthRequirement::NoFourCycles,
            Some(6) => GirthRequirement::NoSixCycles,
            Some(other) => return Err(value_err(format!("girth must be 4 or 6, got {other}"))),
        };
        let derivation = grouprings::ldpc_derive(&self.elem, &rows, req).map_err(value_err)?;
        Ok((
            PyBlockCode {
                code: derivation.code,
            },
            derivation.cycle_report.four_cycles,
        ))
    }

    fn conv_memory1(&self) -> PyResult<PyConv> {
        Ok(PyConv {
            code: grouprings::ldpc_conv_memory1(&self.elem).map_err(value_err)?,
        })
    }

    fn conv_memory3(&self) -> PyResult<PyConv> {
        Ok(PyConv {
            code: grouprings::ldpc_conv_memory3(&self.elem).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        self.elem.to_string()
    }
}

#[pyfunction]
fn gsb(n: usize, r: usize, delta: usize) -> u64 {
    conv::gsb(n, r, delta)
}

#[pyfunction]
fn self_dual_from_orthogonal(x: &PyMatrix) -> PyResult<PyBlockCode> {
    Ok(PyBlockCode {
        code: block::self_dual_from_orthogonal(&x.mat).map_err(value_err)?,
    })
}

#[pyfunction]
fn hamming_unit() -> PyScheme {
    PyScheme {
        scheme: named::hamming_unit().scheme,
    }
}

#[pyfunction]
fn golay_unit() -> PyScheme {
    PyScheme {
        scheme: named::golay_unit().scheme,
    }
}

#[pyfunction]
fn binary_x4() -> PyScheme {
    PyScheme {
        scheme: named::binary_x4().scheme,
    }
}

#[pyfunction]
fn paley_hadamard12(field: &PyField) -> PyResult<PyMatrix> {
    Ok(PyMatrix {
        mat: named::paley_hadamard12(&field.spec).map_err(value_err)?,
    })
}

#[pyfunction]
fn hadamard12_unit(field: &PyField) -> PyResult<PyScheme> {
    Ok(PyScheme {
        scheme: named::hadamard12_unit(&field.spec).map_err(value_err)?.scheme,
    })
}

#[pyfunction]
fn ldpc96_check_element() -> PyGroupRing {
    PyGroupRing {
        elem: grouprings::ldpc96_check_element(),
    }
}

/// Returns (four_cycles, six_cycles or None).
#[pyfunction]
#[pyo3(signature = (matrix, count_six=false))]
fn short_cycle_census(matrix: &PyMatrix, count_six: bool) -> PyResult<(u64, Option<u64>)> {
    let report = grouprings::short_cycle_census(&matrix.mat, count_six).map_err(value_err)?;
    Ok((report.four_cycles, report.six_cycles))
}

#[pyfunction]
fn to_alist(check: &PyMatrix) -> PyResult<String> {
    grouprings::to_alist(&check.mat).map_err(value_err)
}

#[pyfunction]
fn complete_unit(a: &PyMatrix) -> PyResult<PyScheme> {
    Ok(PyScheme {
        scheme: complete_to_unit(&a.mat).map_err(value_err)?,
    })
}

/// Deterministic random invertible matrix (for experiments).
#[pyfunction]
fn random_unit(field: &PyField, n: usize, seed: u64) -> PyScheme {
    let mut rng = Rng::new(seed);
    let u = unit_codes_core::sampling::random_invertible(&field.spec, n, &mut rng);
    PyScheme {
        scheme: UnitScheme::from_unit(u).expect("sampled invertible"),
    }
}

#[pymodule]
fn unit_codes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyBlockCode>()?;
    m.add_class::<PyScheme>()?;
    m.add_class::<PySplit>()?;
    m.add_class::<PyConv>()?;
    m.add_class::<PyFourier>()?;
    m.add_class::<PyGroupRing>()?;
    m.add_function(wrap_pyfunction!(gsb, m)?)?;
    m.add_function(wrap_pyfunction!(self_dual_from_orthogonal, m)?)?;
    m.add_function(wrap_pyfunction!(hamming_unit, m)?)?;
    m.add_function(wrap_pyfunction!(golay_unit, m)?)?;
    m.add_function(wrap_pyfunction!(binary_x4, m)?)?;
    m.add_function(wrap_pyfunction!(paley_hadamard12, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard12_unit, m)?)?;
    m.add_function(wrap_pyfunction!(ldpc96_check_element, m)?)?;
    m.add_function(wrap_pyfunction!(short_cycle_census, m)?)?;
    m.add_function(wrap_pyfunction!(to_alist, m)?)?;
    m.add_function(wrap_pyfunction!(complete_unit, m)?)?;
    m.add_function(wrap_pyfunction!(random_unit, m)?)?;
    Ok(())
}
