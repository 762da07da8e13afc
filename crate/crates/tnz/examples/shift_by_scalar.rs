//! Shift the value of a closed network by an exact constant without
//! contracting it first in spirit: the rebuilt network has the same shape,
//! every bond dimension one higher, and contracts to the old value plus the
//! shift. Probing "value == k" then reduces to a plain non-zero test.

use tnz::contract::contract_closed;
use tnz::reduce::{add_scalar, compile_sharp2sat, Cnf2, Literal};
use tnz::Scalar;

fn main() {
    let formula = Cnf2::new(
        2,
        vec![[Literal::new(0, true), Literal::new(1, true)]],
    )
    .unwrap();
    let network = compile_sharp2sat(&formula);
    let count = contract_closed(&network).unwrap();
    println!("model count: {}", count);

    for k in 0..5 {
        let shifted = add_scalar(&network, &Scalar::from_int(-k)).unwrap();
        assert_eq!(shifted.num_nodes(), network.num_nodes());
        assert_eq!(shifted.num_edges(), network.num_edges());
        let value = contract_closed(&shifted).unwrap();
        println!(
            "count - {} = {}   (zero means the count is exactly {})",
            k, value, k
        );
    }

    // The construction also works for complex shifts.
    let twisted = add_scalar(&network, &(Scalar::i() * Scalar::from_int(7))).unwrap();
    println!("count + 7i = {}", contract_closed(&twisted).unwrap());

    // Bond dimensions all grew by exactly one.
    for (id, _) in network.edges() {
        let before = network.bond_dim(id).unwrap();
        let after = add_scalar(&network, &Scalar::one())
            .unwrap()
            .bond_dim(id)
            .unwrap();
        println!("edge {}: bond {} -> {}", id, before, after);
    }
}
