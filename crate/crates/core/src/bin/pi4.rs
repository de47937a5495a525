fn main() { println!("pi4"); }
