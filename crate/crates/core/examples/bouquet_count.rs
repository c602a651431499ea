//! Spheres in the bouquet: counted directly, and from the regularity
//! formula.

use stallings::complexes::{
    bouquet_count_direct, bouquet_count_formula, contractibility_certificate, icosahedron_boundary, octahedron_boundary, simplex_boundary,
};

fn main() -> stallings::Result<()> {
    for (name, c) in [("tetrahedron", simplex_boundary(3)), ("octahedron", octahedron_boundary()), ("icosahedron", icosahedron_boundary())] {
        let first = c.simplices(2).next().expect("a triangle").clone();
        let d = c.without(&[first])?;
        let cert = contractibility_certificate(&d);
        let direct = bouquet_count_direct(&c, &d)?;
        let formula = bouquet_count_formula(&c, 2, &d, std::slice::from_ref(&d))?;
        println!("{name}: chi = {}, D is {:?}, direct {direct}, formula {}", c.euler_characteristic(2), cert.verdict, formula.limit);
    }
    Ok(())
}
