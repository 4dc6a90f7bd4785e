/// A vector field evaluated at Cartesian points, returning Cartesian components.
pub trait VectorField {
    fn eval(&self, x: [f64; 3]) -> [f64; 3];
}

impl<F> VectorField for F
where
    F: Fn([f64; 3]) -> [f64; 3],
{
    fn eval(&self, x: [f64; 3]) -> [f64; 3] {
        self(x)
    }
}

/// A scalar field evaluated at Cartesian points.
pub trait ScalarField {
    fn eval(&self, x: [f64; 3]) -> f64;
}

impl<F> ScalarField for F
where
    F: Fn([f64; 3]) -> f64,
{
    fn eval(&self, x: [f64; 3]) -> f64 {
        self(x)
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    num_traits::Float::sqrt(dot(a, a))
}

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}
