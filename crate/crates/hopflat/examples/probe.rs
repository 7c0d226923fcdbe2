use hopflat::constructions::{builtin_algebra, Doubles};
use hopflat::exec::ExecMode;
use hopflat::graph::torus;
use hopflat::kitaev::KitaevModel;
use std::time::Instant;
fn main() {
    for (n, mm) in [(3usize, 3usize), (3, 4)] {
        let doubles = Doubles::build(builtin_algebra("z2").unwrap()).unwrap();
        let m = KitaevModel::new(doubles, torus(n, mm)).unwrap();
        let t0 = Instant::now();
        let dim = m.protected_dimension(ExecMode::Parallel).unwrap();
        println!("torus-{n}-{mm}: protected dim = {dim} in {:?}", t0.elapsed());
    }
}
