use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn module_runs_from_python() {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(fatpoints::fatpoints)(py);
        let globals = PyDict::new(py);
        globals.set_item("fp", m).unwrap();
        let code = c"
z = fp.Scheme([[3, 2], [2, 0]])
assert z.is_acm()
assert z.degree() == 12
assert z.hilbert(window=(5, 5)) == z.hilbert(window=(5, 5), oracle=True, exact=True)
assert fp.conjugate([4, 4, 3, 1]) == [4, 3, 3, 2]
assert not fp.Scheme([[1, 0], [0, 1]]).is_acm()
try:
    fp.Scheme([[1], [2, 3]])
    raise AssertionError('ragged grid accepted')
except ValueError:
    pass
";
        py.run(code, Some(&globals), None).unwrap();
    });
}
